// SPDX-License-Identifier: Apache-2.0

//! Shortest encoding of a string by nested repetition blocks.
//!
//! A block `u^k` (`k >= 2`) may be written as `open(k) enc(u) close(k)`.
//! [`build_lmin`] computes the optimal length of every substring bottom-up
//! by length; [`render_encoding`] rebuilds one optimal encoding and
//! [`decode`] inverts it.

mod markers;

pub use markers::{DecimalMarkers, FixedWidthMarkers, MarkerScheme};

use crate::error::{Error, Result};

/// Ascending divisors of `l`.
pub fn divisors(l: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut a = 1;
    while a * a <= l {
        if l % a == 0 {
            small.push(a);
            if a * a != l {
                large.push(l / a);
            }
        }
        a += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Whether `s[i..=j]` (0-based, inclusive) is `u^k` with `|u| = L / k`.
pub fn has_period_structure(s: &[char], i: usize, j: usize, k: usize) -> Result<bool> {
    let l = j + 1 - i;
    if k < 2 || l % k != 0 {
        return Err(Error::BadDivisor { k, len: l });
    }
    Ok(is_power(s, i, j, l / k))
}

#[inline]
fn is_power(s: &[char], i: usize, j: usize, period: usize) -> bool {
    (i + period..=j).all(|p| s[p] == s[p - period])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Repetitions of the whole substring only.
    Strict,
    /// Also concatenations of two independently encoded halves.
    #[default]
    WithSplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Literal,
    Repeat(usize),
    /// Split after position `m` (0-based): `[i, m]` and `[m + 1, j]`.
    Split(usize),
}

/// Optimal lengths and reconstruction choices for every substring.
#[derive(Debug, Clone)]
pub struct EncodingTable {
    n: usize,
    len: Vec<usize>,
    choice: Vec<Choice>,
}

impl EncodingTable {
    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Minimal encoded length of `s[i..=j]`.
    pub fn lmin(&self, i: usize, j: usize) -> usize {
        self.len[self.at(i, j)]
    }

    pub fn choice(&self, i: usize, j: usize) -> Choice {
        self.choice[self.at(i, j)]
    }

    /// Minimal encoded length of the whole string; 0 when empty.
    pub fn total(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.lmin(0, self.n - 1)
        }
    }
}

fn check_alphabet(s: &[char], markers: &dyn MarkerScheme) -> Result<()> {
    match s.iter().find(|&&c| markers.is_marker_char(c)) {
        Some(&c) => Err(Error::MarkerCollision(c)),
        None => Ok(()),
    }
}

/// Fills the table by increasing substring length. Ties keep the earlier
/// rule: literal, then the smallest `k`, then the smallest split point.
pub fn build_lmin(s: &[char], markers: &dyn MarkerScheme, mode: Mode) -> Result<EncodingTable> {
    check_alphabet(s, markers)?;
    let n = s.len();
    let mut t = EncodingTable {
        n,
        len: vec![0; n * n],
        choice: vec![Choice::Literal; n * n],
    };
    for i in 0..n {
        let c = t.at(i, i);
        t.len[c] = 1;
    }
    for l in 2..=n {
        let ks: Vec<usize> = divisors(l).into_iter().filter(|&k| k >= 2 && markers.supports(k)).collect();
        for i in 0..=n - l {
            let j = i + l - 1;
            let mut best = l;
            let mut choice = Choice::Literal;
            for &k in &ks {
                let period = l / k;
                if !is_power(s, i, j, period) {
                    continue;
                }
                let cand = markers.len_open(k) + markers.len_close(k) + t.lmin(i, i + period - 1);
                if cand < best {
                    best = cand;
                    choice = Choice::Repeat(k);
                }
            }
            if mode == Mode::WithSplit {
                for m in i..j {
                    let cand = t.lmin(i, m) + t.lmin(m + 1, j);
                    if cand < best {
                        best = cand;
                        choice = Choice::Split(m);
                    }
                }
            }
            let c = t.at(i, j);
            t.len[c] = best;
            t.choice[c] = choice;
        }
    }
    Ok(t)
}

/// One optimal encoding, following the recorded choices.
pub fn render_encoding(s: &[char], table: &EncodingTable, markers: &dyn MarkerScheme) -> String {
    let mut out = String::with_capacity(table.total());
    if !s.is_empty() {
        render_into(s, table, markers, 0, s.len() - 1, &mut out);
    }
    out
}

fn render_into(s: &[char], t: &EncodingTable, markers: &dyn MarkerScheme, i: usize, j: usize, out: &mut String) {
    match t.choice(i, j) {
        Choice::Literal => out.extend(&s[i..=j]),
        Choice::Repeat(k) => {
            out.push_str(&markers.open(k));
            render_into(s, t, markers, i, i + (j + 1 - i) / k - 1, out);
            out.push_str(&markers.close(k));
        }
        Choice::Split(m) => {
            render_into(s, t, markers, i, m, out);
            render_into(s, t, markers, m + 1, j, out);
        }
    }
}

/// Builds the table and renders the optimum.
pub fn encode(s: &str, markers: &dyn MarkerScheme, mode: Mode) -> Result<String> {
    let chars: Vec<char> = s.chars().collect();
    let table = build_lmin(&chars, markers, mode)?;
    Ok(render_encoding(&chars, &table, markers))
}

/// Expands every block, innermost first.
pub fn decode(encoded: &str, markers: &dyn MarkerScheme) -> Result<String> {
    let chars: Vec<char> = encoded.chars().collect();
    // (k, body start in `out`, offset of the opening marker)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    let mut out: Vec<char> = Vec::with_capacity(chars.len());
    let mut p = 0;
    while p < chars.len() {
        let rest = &chars[p..];
        if let Some((k, used)) = markers.parse_open(rest) {
            stack.push((k, out.len(), p));
            p += used;
            continue;
        }
        if let Some(&(k, start, _)) = stack.last() {
            if let Some(used) = markers.parse_close(rest, k) {
                stack.pop();
                if out.len() == start {
                    return Err(Error::MalformedEncoding {
                        offset: p,
                        reason: "empty repeated block".into(),
                    });
                }
                let body = out[start..].to_vec();
                for _ in 1..k {
                    out.extend_from_slice(&body);
                }
                p += used;
                continue;
            }
        }
        if markers.is_marker_char(chars[p]) {
            let reason = if stack.is_empty() && markers.parse_close(rest, 0).is_some() {
                "closing marker without a matching opening marker"
            } else {
                "unknown marker"
            };
            return Err(Error::MalformedEncoding {
                offset: p,
                reason: reason.into(),
            });
        }
        out.push(chars[p]);
        p += 1;
    }
    if let Some(&(_, _, at)) = stack.last() {
        return Err(Error::MalformedEncoding {
            offset: at,
            reason: "unclosed repeated block".into(),
        });
    }
    Ok(out.into_iter().collect())
}
