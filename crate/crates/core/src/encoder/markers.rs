// SPDX-License-Identifier: Apache-2.0

//! Marker strings delimiting a repeated block.

/// How a repetition `u^k` is written: `open(k) u close(k)`.
///
/// The lengths used by the optimizer come from [`len_open`] and
/// [`len_close`], so a scheme may price markers independently of how they
/// are spelled as long as rendering stays consistent.
///
/// [`len_open`]: MarkerScheme::len_open
/// [`len_close`]: MarkerScheme::len_close
pub trait MarkerScheme {
    fn open(&self, k: usize) -> String;
    fn close(&self, k: usize) -> String;

    fn len_open(&self, k: usize) -> usize {
        self.open(k).chars().count()
    }

    fn len_close(&self, k: usize) -> usize {
        self.close(k).chars().count()
    }

    /// Whether the scheme can write a repetition count of `k`.
    fn supports(&self, k: usize) -> bool {
        k >= 2
    }

    /// True for every character a marker may contain.
    fn is_marker_char(&self, c: char) -> bool;

    /// An opening marker at the start of `s`: `(k, chars consumed)`.
    fn parse_open(&self, s: &[char]) -> Option<(usize, usize)>;

    /// A closing marker for `k` at the start of `s`: chars consumed.
    fn parse_close(&self, s: &[char], k: usize) -> Option<usize>;
}

fn parse_count(s: &[char]) -> Option<(usize, usize)> {
    let digits = s.iter().take_while(|c| c.is_ascii_digit()).count();
    if digits == 0 {
        return None;
    }
    let text: String = s[..digits].iter().collect();
    text.parse().ok().map(|k| (k, digits))
}

/// `k(` ... `)`, with `k` in decimal without leading zeros.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecimalMarkers;

impl MarkerScheme for DecimalMarkers {
    fn open(&self, k: usize) -> String {
        format!("{k}(")
    }

    fn close(&self, _k: usize) -> String {
        ")".to_string()
    }

    fn len_open(&self, k: usize) -> usize {
        let mut digits = 1;
        let mut v = k / 10;
        while v > 0 {
            digits += 1;
            v /= 10;
        }
        digits + 1
    }

    fn len_close(&self, _k: usize) -> usize {
        1
    }

    fn is_marker_char(&self, c: char) -> bool {
        c.is_ascii_digit() || c == '(' || c == ')'
    }

    fn parse_open(&self, s: &[char]) -> Option<(usize, usize)> {
        let (k, n) = parse_count(s)?;
        let canonical = s[0] != '0';
        (canonical && k >= 2 && s.get(n) == Some(&'(')).then_some((k, n + 1))
    }

    fn parse_close(&self, s: &[char], _k: usize) -> Option<usize> {
        (s.first() == Some(&')')).then_some(1)
    }
}

/// `{` + `k` zero-padded to `width` digits ... `}`. Every opening marker has
/// the same length; counts with more than `width` digits are unavailable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedWidthMarkers {
    pub width: usize,
}

impl MarkerScheme for FixedWidthMarkers {
    fn open(&self, k: usize) -> String {
        format!("{{{k:0w$}", w = self.width)
    }

    fn close(&self, _k: usize) -> String {
        "}".to_string()
    }

    fn len_open(&self, _k: usize) -> usize {
        self.width + 1
    }

    fn len_close(&self, _k: usize) -> usize {
        1
    }

    fn supports(&self, k: usize) -> bool {
        k >= 2 && k.to_string().len() <= self.width
    }

    fn is_marker_char(&self, c: char) -> bool {
        c.is_ascii_digit() || c == '{' || c == '}'
    }

    fn parse_open(&self, s: &[char]) -> Option<(usize, usize)> {
        if s.first() != Some(&'{') || s.len() < self.width + 1 {
            return None;
        }
        let body = &s[1..=self.width];
        if !body.iter().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let (k, _) = parse_count(body)?;
        self.supports(k).then_some((k, self.width + 1))
    }

    fn parse_close(&self, s: &[char], _k: usize) -> Option<usize> {
        (s.first() == Some(&'}')).then_some(1)
    }
}
