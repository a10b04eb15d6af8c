//! Text front-ends: `PD[X(a,b,c,d),...,O(k)]` and `B[n; i,j,...]`.

use std::collections::BTreeSet;

use super::{BraidWord, Edge};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.err(format!("expected `{}`, found `{}`", c as char, got as char)),
                None => self.err(format!("expected `{}`, found end of input", c as char)),
            }
        }
    }

    fn expect_one_of(&mut self, cs: &[u8]) -> Result<u8> {
        match self.peek() {
            Some(c) if cs.contains(&c) => {
                self.pos += 1;
                Ok(c)
            }
            _ => {
                let want: Vec<String> = cs.iter().map(|&c| format!("`{}`", c as char)).collect();
                self.err(format!("expected one of {}", want.join(" ")))
            }
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn label(&mut self) -> Result<Edge> {
        let at = self.pos;
        let v = self.int()?;
        if v <= 0 || v > Edge::MAX as i64 {
            self.pos = at;
            self.skip_ws();
            return self.err("edge labels must be positive integers");
        }
        Ok(v as Edge)
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.err("trailing input"),
        }
    }
}

fn close_of(open: u8) -> u8 {
    if open == b'(' {
        b')'
    } else {
        b']'
    }
}

pub(super) fn parse_pd_tokens(text: &str) -> Result<(Vec<[Edge; 4]>, usize)> {
    let mut c = Cursor::new(text);
    c.expect(b'P')?;
    c.expect(b'D')?;
    let outer = c.expect_one_of(b"[(")?;
    let mut crossings = vec![];
    let mut loops = BTreeSet::new();
    if !c.eat(close_of(outer)) {
        loop {
            let tok_pos = {
                c.skip_ws();
                c.pos
            };
            match c.expect_one_of(b"XO")? {
                b'X' => {
                    let open = c.expect_one_of(b"[(")?;
                    let mut x = [0; 4];
                    for (i, slot) in x.iter_mut().enumerate() {
                        if i > 0 {
                            c.expect(b',')?;
                        }
                        *slot = c.label()?;
                    }
                    c.expect(close_of(open))?;
                    crossings.push(x);
                }
                _ => {
                    let open = c.expect_one_of(b"[(")?;
                    let k = c.label()?;
                    c.expect(close_of(open))?;
                    if !loops.insert(k) {
                        return Err(Error::Syntax {
                            pos: tok_pos,
                            msg: format!("circle O({k}) declared twice"),
                        });
                    }
                }
            }
            if c.eat(b',') {
                continue;
            }
            c.expect(close_of(outer))?;
            break;
        }
    }
    c.end()?;
    if let Some(&k) = loops.iter().find(|k| crossings.iter().any(|x| x.contains(k))) {
        return Err(Error::InvalidInput(format!("circle label {k} is also used as an edge")));
    }
    Ok((crossings, loops.len()))
}

pub(super) fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut c = Cursor::new(text);
    c.expect(b'B')?;
    let open = c.expect_one_of(b"[(")?;
    let n_pos = c.pos;
    let n = c.int()?;
    if n <= 0 {
        return Err(Error::Syntax { pos: n_pos, msg: "strand count must be positive".into() });
    }
    let mut letters = vec![];
    if c.eat(b';') && c.peek() != Some(close_of(open)) {
        loop {
            let v = c.int()?;
            letters.push(i32::try_from(v).map_err(|_| Error::Braid(format!("letter {v} too large")))?);
            if !c.eat(b',') {
                break;
            }
        }
    }
    c.expect(close_of(open))?;
    c.end()?;
    BraidWord::new(n as usize, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pd_tokens() {
        let (x, l) = parse_pd_tokens(" PD[ X(1,4,2,5), X[3,6,4,1],X(5,2,6,3) ] ").unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x[1], [3, 6, 4, 1]);
        assert_eq!(l, 0);
        let (x, l) = parse_pd_tokens("PD[O(1),O(2)]").unwrap();
        assert!(x.is_empty());
        assert_eq!(l, 2);
        assert_eq!(parse_pd_tokens("PD[]").unwrap(), (vec![], 0));
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_pd_tokens("PD[X(1,2,3)]") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        match parse_pd_tokens("PD[X(1,2,0,4)]") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pd_tokens("PD[Y(1)]"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_pd_tokens("PD[O(1)] x"), Err(Error::Syntax { pos: 9, .. })));
        assert!(matches!(parse_pd_tokens("PD[O(1),O(1)]"), Err(Error::Syntax { pos: 8, .. })));
    }

    #[test]
    fn braids() {
        let b = parse_braid("B[3; 1,-2,1,-2]").unwrap();
        assert_eq!(b.strand_count(), 3);
        assert_eq!(b.letters(), &[1, -2, 1, -2]);
        let e = parse_braid("B[2;]").unwrap();
        assert!(e.letters().is_empty());
        let e = parse_braid("B[2]").unwrap();
        assert!(e.letters().is_empty());
        assert!(parse_braid("B[2; 3]").is_err());
        assert!(parse_braid("B[0; ]").is_err());
        assert_eq!(b.to_string(), "B[3; 1,-2,1,-2]");
        assert_eq!(parse_braid(&b.to_string()).unwrap(), b);
    }
}
