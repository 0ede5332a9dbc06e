// SPDX-License-Identifier: Apache-2.0

//! Line-oriented text formats. Blank lines and lines starting with `#` are
//! skipped everywhere.

use mdkit::grammar::{Grammar, Symbol};

use crate::error::{CliError, CliResult};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

fn int<T: std::str::FromStr>(line: usize, tok: &str) -> CliResult<T> {
    tok.parse().map_err(|_| bad(line, format!("expected an integer, found '{tok}'")))
}

/// Header `d r`, then `r` rows of `d` integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointsFile {
    pub dim: usize,
    pub rows: Vec<Vec<i64>>,
}

impl PointsFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or_else(|| CliError::Input("empty points file".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(bad(hl, "header must be 'd r'"));
        }
        let dim: usize = int(hl, head[0])?;
        let r: usize = int(hl, head[1])?;
        if dim == 0 {
            return Err(bad(hl, "dimension must be positive"));
        }
        let mut rows = Vec::with_capacity(r);
        for (ln, line) in lines {
            let row = line.split_whitespace().map(|t| int(ln, t)).collect::<CliResult<Vec<i64>>>()?;
            if row.len() != dim {
                return Err(bad(ln, format!("expected {dim} coordinates, found {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != r {
            return Err(CliError::Input(format!("header announces {r} points, found {}", rows.len())));
        }
        Ok(PointsFile { dim, rows })
    }

    pub fn render(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", self.dim, self.rows.len()));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Header `N`, then one line per nonterminal `X = 1..N`:
/// `L sym_1 .. sym_L`, where `'c'` is a terminal and a bare integer `Y < X`
/// a nonterminal. The last rule is the start symbol.
pub fn parse_grammar(text: &str) -> CliResult<Grammar> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| CliError::Input("empty grammar file".into()))?;
    let n: usize = int(hl, header)?;
    let mut rules = Vec::with_capacity(n);
    for (ln, line) in lines {
        let x = rules.len() + 1;
        if x > n {
            return Err(bad(ln, format!("more than the announced {n} rules")));
        }
        let mut toks = line.split_whitespace();
        let len: usize = int(ln, toks.next().expect("non-empty line"))?;
        let mut rule = Vec::with_capacity(len);
        for tok in toks {
            rule.push(parse_symbol(ln, x, tok)?);
        }
        if rule.len() != len {
            return Err(bad(ln, format!("rule {x} announces {len} symbols, found {}", rule.len())));
        }
        rules.push(rule);
    }
    if rules.len() != n {
        return Err(CliError::Input(format!("header announces {n} rules, found {}", rules.len())));
    }
    Ok(Grammar::new(rules)?)
}

fn parse_symbol(line: usize, x: usize, tok: &str) -> CliResult<Symbol> {
    let b = tok.as_bytes();
    if b.len() == 3 && b[0] == b'\'' && b[2] == b'\'' {
        let c = b[1] as char;
        if !c.is_ascii_graphic() {
            return Err(bad(line, format!("terminal {tok} is not a printable character")));
        }
        return Ok(Symbol::Terminal(c));
    }
    let y: usize = tok.parse().map_err(|_| bad(line, format!("bad symbol '{tok}'")))?;
    if y == 0 || y >= x {
        return Err(bad(line, format!("rule {x} may only refer to nonterminals 1..{}, found {y}", x - 1)));
    }
    Ok(Symbol::NonTerminal(y - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        let text = "# comment\n2 3\n0 0\n\n5 3\n# inner\n9 4\n";
        let pf = PointsFile::parse(text).unwrap();
        assert_eq!(pf.rows, vec![vec![0, 0], vec![5, 3], vec![9, 4]]);
        assert_eq!(PointsFile::parse(&pf.render(&["x".into()])).unwrap(), pf);
    }

    #[test]
    fn points_errors() {
        for bad in ["", "2\n", "2 1\n1\n", "2 2\n1 2\n", "2 1\n1 x\n", "0 0\n"] {
            assert!(PointsFile::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn grammar_files() {
        let g = parse_grammar("2\n2 'a' 'b'\n2 1 1\n").unwrap();
        assert_eq!(g.rule(1), &[Symbol::NonTerminal(0), Symbol::NonTerminal(0)]);
        for bad in ["1\n1 1\n", "2\n1 'a'\n1 2\n", "1\n2 'a'\n", "1\n0\n", "1\n1 'ab'\n", "2\n1 'a'\n"] {
            assert!(parse_grammar(bad).is_err(), "{bad:?}");
        }
    }
}
