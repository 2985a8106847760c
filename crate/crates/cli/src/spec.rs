//! Group specifications: `fab:[n1,...]`, `mc:m,n,r`, `heis:[d1,...];N`, `table:@file.json`.

use schurcover_core::groups::finite_table_of;
use schurcover_core::{FinAbDesc, FiniteGroupTable, HeisenbergDesc, MetacyclicDesc};
use std::fmt;
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    FinAb(Vec<u64>),
    Metacyclic { m: u64, n: u64, r: u64 },
    Heisenberg { d: Vec<u64>, modulus: u64 },
    Table(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    /// Malformed text at a byte offset.
    Syntax { offset: usize, message: String },
    /// Well-formed text violating a rule of the family.
    Semantic { rule: String, message: String },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Syntax { offset, message } => write!(f, "syntax error at byte {offset}: {message}"),
            SpecError::Semantic { rule, message } => write!(f, "{message} (rule {rule})"),
        }
    }
}

impl std::error::Error for SpecError {}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), SpecError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn number(&mut self) -> Result<u64, SpecError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(x) => self.err(format!("expected a number, found '{}'", x as char)),
                None => self.err("expected a number, found end of input"),
            };
        }
        self.text[start..self.pos].parse().map_err(|_| SpecError::Syntax {
            offset: start,
            message: "number does not fit in 64 bits".into(),
        })
    }

    /// `[n1,n2,...]`, possibly empty.
    fn list(&mut self) -> Result<Vec<u64>, SpecError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(x) => return self.err(format!("expected ',' or ']', found '{}'", x as char)),
                None => return self.err("unterminated list"),
            }
        }
    }

    fn end(&self) -> Result<(), SpecError> {
        match self.peek() {
            None => Ok(()),
            Some(x) => self.err(format!("unexpected trailing '{}'", x as char)),
        }
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let Some(colon) = text.find(':') else {
        return Err(SpecError::Syntax {
            offset: 0,
            message: "expected one of fab:, mc:, heis:, table:".into(),
        });
    };
    let mut c = Cursor {
        text,
        pos: colon + 1,
    };
    let spec = match &text[..colon] {
        "fab" => {
            let f = c.list()?;
            c.end()?;
            GroupSpec::FinAb(f)
        }
        "mc" => {
            let m = c.number()?;
            c.expect(b',')?;
            let n = c.number()?;
            c.expect(b',')?;
            let r = c.number()?;
            c.end()?;
            GroupSpec::Metacyclic { m, n, r }
        }
        "heis" => {
            let d = c.list()?;
            c.expect(b';')?;
            let modulus = c.number()?;
            c.end()?;
            GroupSpec::Heisenberg { d, modulus }
        }
        "table" => {
            c.expect(b'@')?;
            if c.peek().is_none() {
                return c.err("expected a file name");
            }
            GroupSpec::Table(PathBuf::from(&text[c.pos..]))
        }
        other => {
            return Err(SpecError::Syntax {
                offset: 0,
                message: format!("unknown family '{other}'"),
            })
        }
    };
    spec.check()?;
    Ok(spec)
}

impl GroupSpec {
    fn check(&self) -> Result<(), SpecError> {
        match self {
            GroupSpec::Metacyclic { m, n, r } => MetacyclicDesc::new(*m, *n, *r)
                .map(|_| ())
                .map_err(|e| SpecError::Semantic {
                    rule: if *r == 0 {
                        "r > 0".into()
                    } else if *m > 0 && gcd(*r, *m) != 1 {
                        "gcd(r,m)=1".into()
                    } else if *m > 0 && *n > 0 {
                        "r^n=1 mod m".into()
                    } else {
                        "m=n=0 needs r=1".into()
                    },
                    message: e.to_string(),
                }),
            GroupSpec::Heisenberg { d, modulus } => HeisenbergDesc::new(d.clone(), *modulus)
                .map(|_| ())
                .map_err(|e| SpecError::Semantic {
                    rule: "d is a positive divisibility chain".into(),
                    message: e.to_string(),
                }),
            _ => Ok(()),
        }
    }

    /// The multiplication table for finite groups.
    pub fn table(&self, cap: usize) -> schurcover_core::Result<FiniteGroupTable> {
        let t = match self {
            GroupSpec::FinAb(f) => {
                let desc = FinAbDesc::new(f);
                check_order(desc.order().map(|o| o as u128), cap, &desc.to_string())?;
                finite_table_of(&desc)?
            }
            GroupSpec::Metacyclic { m, n, r } => {
                let desc = MetacyclicDesc::new(*m, *n, *r)?;
                check_order(desc.is_finite().then(|| *m as u128 * *n as u128), cap, &desc.to_string())?;
                finite_table_of(&desc)?
            }
            GroupSpec::Heisenberg { d, modulus } => finite_table_of(&HeisenbergDesc::new(d.clone(), *modulus)?)?,
            GroupSpec::Table(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    schurcover_core::Error::Invalid(format!("cannot read {}: {e}", path.display()))
                })?;
                let json = serde_json::from_str(&text)
                    .map_err(|e| schurcover_core::Error::Invalid(format!("{}: {e}", path.display())))?;
                FiniteGroupTable::from_json(&json)?
            }
        };
        if t.order() > cap {
            return Err(schurcover_core::Error::CapExceeded { order: t.order(), cap });
        }
        Ok(t)
    }
}

fn check_order(order: Option<u128>, cap: usize, name: &str) -> schurcover_core::Result<()> {
    match order {
        None => Err(schurcover_core::Error::Infinite(name.to_string())),
        Some(o) if o > cap as u128 => Err(schurcover_core::Error::CapExceeded {
            order: usize::try_from(o).unwrap_or(usize::MAX),
            cap,
        }),
        _ => Ok(()),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    schurcover_core::arith::gcd(a, b)
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::FinAb(v) => write!(f, "fab:[{}]", join(v)),
            GroupSpec::Metacyclic { m, n, r } => write!(f, "mc:{m},{n},{r}"),
            GroupSpec::Heisenberg { d, modulus } => write!(f, "heis:[{}];{modulus}", join(d)),
            GroupSpec::Table(p) => write!(f, "table:@{}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(parse_group_spec("mc:8,0,3").unwrap(), GroupSpec::Metacyclic { m: 8, n: 0, r: 3 });
        assert_eq!(parse_group_spec("fab:[2,4]").unwrap(), GroupSpec::FinAb(vec![2, 4]));
        assert_eq!(parse_group_spec("fab:[]").unwrap(), GroupSpec::FinAb(vec![]));
        assert_eq!(
            parse_group_spec("heis:[1];4").unwrap(),
            GroupSpec::Heisenberg { d: vec![1], modulus: 4 }
        );
        assert_eq!(parse_group_spec("table:@g.json").unwrap(), GroupSpec::Table("g.json".into()));
    }

    #[test]
    fn offsets() {
        let err = |s| match parse_group_spec(s) {
            Err(SpecError::Syntax { offset, .. }) => offset,
            other => panic!("{other:?}"),
        };
        assert_eq!(err("mc:8,0"), 6);
        assert_eq!(err("fab:[2,x]"), 7);
        assert_eq!(err("fab:[2]x"), 7);
        assert_eq!(err("grp:1"), 0);
        assert_eq!(err("heis:[1]4"), 8);
    }

    #[test]
    fn semantic_rule() {
        match parse_group_spec("mc:8,0,2") {
            Err(SpecError::Semantic { rule, .. }) => assert_eq!(rule, "gcd(r,m)=1"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_group_spec("mc:4,2,2"), Err(SpecError::Semantic { .. })));
        assert!(matches!(parse_group_spec("heis:[2,3];0"), Err(SpecError::Semantic { .. })));
    }

    #[test]
    fn round_trip() {
        for s in ["fab:[2,2,4]", "mc:7,0,8", "heis:[1,2];0", "table:@x/y.json", "fab:[]"] {
            assert_eq!(parse_group_spec(s).unwrap().to_string(), s);
        }
    }
}
