// SPDX-License-Identifier: Apache-2.0

//! Pattern occurrences in the expansion of an acyclic grammar.
//!
//! For every nonterminal `q` and automaton state `j` the counter keeps the
//! number of matches produced while reading `Exp(q)` from state `j`, and the
//! state reached at the end. A rule `X -> s_1 .. s_L` is folded right to
//! left, one full row of states per symbol, so the expansion is never built.

mod kmp;

pub use kmp::{prefix_function, PatternAutomaton};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Terminal(char),
    /// A nonterminal by 0-based index, which must be below the rule's own.
    NonTerminal(usize),
}

/// Rules indexed from 0; the last nonterminal is the start symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    rules: Vec<Vec<Symbol>>,
}

impl Grammar {
    pub fn new(rules: Vec<Vec<Symbol>>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::InvalidGrammar("no rules".into()));
        }
        for (x, rule) in rules.iter().enumerate() {
            if rule.is_empty() {
                return Err(Error::InvalidGrammar(format!("rule {} is empty", x + 1)));
            }
            for s in rule {
                if let Symbol::NonTerminal(y) = *s {
                    if y >= x {
                        return Err(Error::InvalidGrammar(format!(
                            "rule {} refers to nonterminal {} (must be below {})",
                            x + 1,
                            y + 1,
                            x + 1
                        )));
                    }
                }
            }
        }
        Ok(Grammar { rules })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rule(&self, x: usize) -> &[Symbol] {
        &self.rules[x]
    }

    pub fn rules(&self) -> &[Vec<Symbol>] {
        &self.rules
    }

    /// Exact expansion length of every nonterminal.
    pub fn expansion_lengths(&self) -> Vec<BigUint> {
        let mut lens: Vec<BigUint> = Vec::with_capacity(self.rules.len());
        for rule in &self.rules {
            let mut total = <BigUint as Zero>::zero();
            for s in rule {
                match *s {
                    Symbol::Terminal(_) => total += 1u32,
                    Symbol::NonTerminal(y) => total += &lens[y],
                }
            }
            lens.push(total);
        }
        lens
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    Mod(u64),
}

/// Additive counter domain for the table.
trait Tally: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self, modulus: u64) -> Self;
}

impl Tally for BigUint {
    fn zero() -> Self {
        <BigUint as Zero>::zero()
    }

    fn one() -> Self {
        BigUint::from(1u32)
    }

    fn add(&self, other: &Self, _modulus: u64) -> Self {
        self + other
    }
}

impl Tally for u64 {
    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn add(&self, other: &Self, modulus: u64) -> Self {
        ((*self as u128 + *other as u128) % modulus as u128) as u64
    }
}

/// Per-nonterminal rows: matches and end state when reading from `j`.
struct Tables<T> {
    count: Vec<Vec<T>>,
    end: Vec<Vec<usize>>,
}

fn fill<T: Tally>(g: &Grammar, pa: &PatternAutomaton, modulus: u64) -> Tables<T> {
    let ls = pa.len();
    let mut tables = Tables {
        count: Vec::with_capacity(g.len()),
        end: Vec::with_capacity(g.len()),
    };
    let mut next_c: Vec<T> = vec![T::zero(); ls];
    let mut next_s: Vec<usize> = vec![0; ls];
    let mut cur_c: Vec<T> = vec![T::zero(); ls];
    let mut cur_s: Vec<usize> = vec![0; ls];
    let one = T::one();
    for rule in g.rules() {
        // Past the end of the rule: nothing matched, state unchanged.
        for j in 0..ls {
            next_c[j] = T::zero();
            next_s[j] = j;
        }
        for s in rule.iter().rev() {
            for j in 0..ls {
                let (ne, hit) = match *s {
                    Symbol::Terminal(c) => {
                        let (ne, m) = pa.advance(j, c);
                        (ne, m.then_some(&one))
                    }
                    Symbol::NonTerminal(q) => (tables.end[q][j], Some(&tables.count[q][j])),
                };
                cur_c[j] = match hit {
                    Some(h) => h.add(&next_c[ne], modulus),
                    None => next_c[ne].clone(),
                };
                cur_s[j] = next_s[ne];
            }
            std::mem::swap(&mut cur_c, &mut next_c);
            std::mem::swap(&mut cur_s, &mut next_s);
        }
        debug_assert!(next_s.iter().all(|&e| e < ls));
        tables.count.push(next_c.clone());
        tables.end.push(next_s.clone());
    }
    tables
}

/// Possibly overlapping occurrences of `pattern` in the expansion of the
/// start symbol. In `Mod(m)` mode the result is reduced modulo `m`.
pub fn count_occurrences(g: &Grammar, pattern: &str, mode: CountMode) -> Result<BigUint> {
    let pa = PatternAutomaton::new(pattern)?;
    let last = g.len() - 1;
    match mode {
        CountMode::Exact => Ok(fill::<BigUint>(g, &pa, 0).count[last][0].clone()),
        CountMode::Mod(0) => Err(Error::InvalidConfig("modulus must be positive".into())),
        CountMode::Mod(m) => {
            let t = fill::<u64>(g, &pa, m);
            Ok(BigUint::from(t.count[last][0] % m))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expansion {
    Text(String),
    /// The expansion would exceed the limit; its exact length.
    TooLarge(BigUint),
}

/// The expansion of the start symbol, if at most `limit` characters long.
pub fn expand(g: &Grammar, limit: u64) -> Expansion {
    let lens = g.expansion_lengths();
    let total = &lens[g.len() - 1];
    match total.to_u64() {
        Some(n) if n <= limit => {
            let mut memo: Vec<Option<String>> = vec![None; g.len()];
            for x in 0..g.len() {
                let mut s = String::new();
                for sym in g.rule(x) {
                    match *sym {
                        Symbol::Terminal(c) => s.push(c),
                        Symbol::NonTerminal(y) => s.push_str(memo[y].as_deref().expect("lower rule")),
                    }
                }
                memo[x] = Some(s);
            }
            Expansion::Text(memo.pop().flatten().expect("start symbol"))
        }
        _ => Expansion::TooLarge(total.clone()),
    }
}

/// Overlapping occurrences by direct scan.
pub fn naive_count(text: &str, pattern: &str) -> Result<u64> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let t: Vec<char> = text.chars().collect();
    let p: Vec<char> = pattern.chars().collect();
    if p.len() > t.len() {
        return Ok(0);
    }
    Ok(t.windows(p.len()).filter(|w| *w == p.as_slice()).count() as u64)
}
