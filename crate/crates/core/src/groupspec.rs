//! Textual group specifications.
//!
//! ```text
//! spec := "name:" id | "alt:" n | "sym:" n | "cyclic:" n | "psl2:" q | "pgl2:" q
//!       | "psigmal2:" q "," f | "wreath(" spec "," n ")" | "aff(" p "," k "," m "," f ")"
//!       | "file:" path
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::constructions::{alternating, cyclic, pgl2, psigmal2, psl2, semilinear_affine, symmetric, wreath_cyclic};
use crate::named::{named_group, GeneratorFile};
use crate::{Error, Group, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Named(String),
    Alt(usize),
    Sym(usize),
    Cyclic(usize),
    Psl2(u64),
    Pgl2(u64),
    PSigmaL2 { q: u64, f: u32 },
    Wreath(Box<GroupSpec>, usize),
    Aff { p: u64, k: u32, m: u64, f: u32 },
    File(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Named(n) => named_group(n),
            GroupSpec::Alt(n) => alternating(*n),
            GroupSpec::Sym(n) => symmetric(*n),
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Psl2(q) => psl2(*q),
            GroupSpec::Pgl2(q) => pgl2(*q),
            GroupSpec::PSigmaL2 { q, f } => psigmal2(*q, *f),
            GroupSpec::Wreath(h, n) => Ok(wreath_cyclic(&h.build()?, *n)?.group),
            GroupSpec::Aff { p, k, m, f } => semilinear_affine(*p, *k, *m, *f),
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)?;
                GeneratorFile::parse(&text)?.build()
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Named(n) => write!(f, "name:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Pgl2(q) => write!(f, "pgl2:{q}"),
            GroupSpec::PSigmaL2 { q, f: e } => write!(f, "psigmal2:{q},{e}"),
            GroupSpec::Wreath(h, n) => write!(f, "wreath({h},{n})"),
            GroupSpec::Aff { p, k, m, f: e } => write!(f, "aff({p},{k},{m},{e})"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let mut p = Parser { src: s.trim(), pos: 0 };
        let spec = p.spec()?;
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Spec(format!("{msg} at byte {} of {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn number<T: FromStr>(&mut self) -> Result<T> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let text = &self.src[self.pos..self.pos + len];
        let v = text.parse().map_err(|_| self.err("number out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn until_delim(&mut self) -> &str {
        let start = self.pos;
        let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        if self.eat("name:") {
            let id = self.until_delim().to_string();
            if id.is_empty() {
                return Err(self.err("expected a group name"));
            }
            return Ok(GroupSpec::Named(id));
        }
        if self.eat("file:") {
            let path = self.until_delim();
            if path.is_empty() {
                return Err(self.err("expected a path"));
            }
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        if self.eat("alt:") {
            return Ok(GroupSpec::Alt(self.number()?));
        }
        if self.eat("sym:") {
            return Ok(GroupSpec::Sym(self.number()?));
        }
        if self.eat("cyclic:") {
            return Ok(GroupSpec::Cyclic(self.number()?));
        }
        if self.eat("psl2:") {
            return Ok(GroupSpec::Psl2(self.number()?));
        }
        if self.eat("pgl2:") {
            return Ok(GroupSpec::Pgl2(self.number()?));
        }
        if self.eat("psigmal2:") {
            let q = self.number()?;
            self.expect(",")?;
            return Ok(GroupSpec::PSigmaL2 { q, f: self.number()? });
        }
        if self.eat("wreath(") {
            let inner = self.spec()?;
            self.expect(",")?;
            let n = self.number()?;
            self.expect(")")?;
            return Ok(GroupSpec::Wreath(Box::new(inner), n));
        }
        if self.eat("aff(") {
            let p = self.number()?;
            self.expect(",")?;
            let k = self.number()?;
            self.expect(",")?;
            let m = self.number()?;
            self.expect(",")?;
            let f = self.number()?;
            self.expect(")")?;
            return Ok(GroupSpec::Aff { p, k, m, f });
        }
        Err(self.err("unknown group constructor"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["name:Frob21", "alt:5", "psigmal2:8,3", "wreath(wreath(sym:2,3),5)", "aff(3,3,13,3)", "file:a/b.json"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "alt:", "wreath(sym:3)", "psigmal2:8", "aff(2,3,7)", "alt:5x", "foo:3"] {
            assert!(s.parse::<GroupSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn builds_orders() {
        let cases = [("wreath(sym:2,3)", 24), ("aff(2,3,7,1)", 56), ("psigmal2:8,3", 1512), ("pgl2:7", 336)];
        for (s, o) in cases {
            assert_eq!(s.parse::<GroupSpec>().unwrap().build().unwrap().order(), o);
        }
    }
}
