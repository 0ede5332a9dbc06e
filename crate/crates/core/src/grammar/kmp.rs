// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// `p[i]`: length of the longest proper border of `s[..=i]`.
pub fn prefix_function(s: &[char]) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let mut p = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[k] != s[i] {
            k = p[k - 1];
        }
        if s[k] == s[i] {
            k += 1;
        }
        p[i] = k;
    }
    Ok(p)
}

/// Matching automaton over states `0..len`; a full match is reported and
/// folded back to the longest border, so the state never reaches `len`.
#[derive(Debug, Clone)]
pub struct PatternAutomaton {
    pattern: Vec<char>,
    border: Vec<usize>,
}

impl PatternAutomaton {
    pub fn new(pattern: &str) -> Result<Self> {
        let pattern: Vec<char> = pattern.chars().collect();
        let border = prefix_function(&pattern)?;
        Ok(PatternAutomaton { pattern, border })
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    pub fn borders(&self) -> &[usize] {
        &self.border
    }

    /// Reads `c` in state `j`: the new state and whether a match ended here.
    #[inline]
    pub fn advance(&self, j: usize, c: char) -> (usize, bool) {
        debug_assert!(j < self.len());
        let mut ne = j;
        while ne > 0 && self.pattern[ne] != c {
            ne = self.border[ne - 1];
        }
        if self.pattern[ne] == c {
            ne += 1;
        }
        if ne == self.len() {
            (self.border[ne - 1], true)
        } else {
            (ne, false)
        }
    }
}
