//! One-line textual group specifications.
//!
//! ```text
//! free rank=<k>
//! cyclicfreeproduct orders=<m1>,<m2>[,...]
//! raag vertices=<v1>,... [edges=<vi>-<vj>,...]
//! zd dim=<D>
//! product (<spec>) (<spec>)
//! ```

use std::fmt;

use super::{GroupModel, RaagGraph, MAX_GENERATORS};
use crate::error::{Error, Result};

/// Parses a group specification, reporting the byte offset of the first
/// offending token on failure.
pub fn parse_spec(text: &str) -> Result<GroupModel> {
    let mut p = Parser { text, pos: 0 };
    let model = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(model)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    /// Next run of non-space characters that are not parentheses.
    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.text[start..start + len])
    }

    fn expect_char(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{c}'")))
        }
    }

    /// Parses `key=value` and returns the value with its offset.
    fn keyed(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (start, tok) = self.word();
        match tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')) {
            Some(value) => Ok((start + key.len() + 1, value)),
            None => Err(Error::parse(start, format!("expected '{key}=...'"))),
        }
    }

    fn spec(&mut self) -> Result<GroupModel> {
        let (start, variant) = self.word();
        match variant {
            "free" => {
                let (at, v) = self.keyed("rank")?;
                let rank = parse_count(at, v)?;
                if rank == 0 {
                    return Err(Error::parse(at, "rank must be at least 1"));
                }
                if rank > MAX_GENERATORS {
                    return Err(Error::parse(at, "rank too large"));
                }
                Ok(GroupModel::Free { rank })
            }
            "cyclicfreeproduct" => {
                let (at, v) = self.keyed("orders")?;
                let mut orders = Vec::new();
                for (offset, item) in split_offsets(v, ',') {
                    let m = parse_count(at + offset, item)?;
                    if m < 2 {
                        return Err(Error::parse(at + offset, "cyclic order must be at least 2"));
                    }
                    orders.push(m as u32);
                }
                if orders.len() < 2 {
                    return Err(Error::parse(at, "need at least two cyclic factors"));
                }
                if orders.len() > MAX_GENERATORS {
                    return Err(Error::parse(at, "too many factors"));
                }
                Ok(GroupModel::FreeProductCyclic { orders })
            }
            "raag" => self.raag(),
            "zd" => {
                let (at, v) = self.keyed("dim")?;
                let dim = parse_count(at, v)?;
                if dim == 0 {
                    return Err(Error::parse(at, "dimension must be at least 1"));
                }
                Ok(GroupModel::ZPower { dim })
            }
            "product" => {
                self.expect_char('(')?;
                let left = self.spec()?;
                self.expect_char(')')?;
                self.expect_char('(')?;
                let right = self.spec()?;
                self.expect_char(')')?;
                Ok(GroupModel::product(left, right))
            }
            "" => Err(Error::parse(start, "expected a group variant")),
            other => Err(Error::parse(start, format!("unknown group variant '{other}'"))),
        }
    }

    fn raag(&mut self) -> Result<GroupModel> {
        let (at, v) = self.keyed("vertices")?;
        let mut vertices: Vec<String> = Vec::new();
        for (offset, name) in split_offsets(v, ',') {
            let valid = !name.is_empty()
                && name != "e"
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && name.starts_with(|c: char| c.is_ascii_alphabetic());
            if !valid {
                return Err(Error::parse(at + offset, format!("invalid vertex name '{name}'")));
            }
            if vertices.iter().any(|x| x == name) {
                return Err(Error::parse(at + offset, format!("duplicate vertex '{name}'")));
            }
            vertices.push(name.to_string());
        }

        let save = self.pos;
        let (estart, tok) = self.word();
        let mut edges = Vec::new();
        if let Some(list) = tok.strip_prefix("edges=") {
            let at = estart + "edges=".len();
            if !list.is_empty() {
                for (offset, item) in split_offsets(list, ',') {
                    let pos = at + offset;
                    let (u, w) = item
                        .split_once('-')
                        .ok_or_else(|| Error::parse(pos, format!("edge '{item}' is not u-v")))?;
                    let find = |name: &str, p: usize| {
                        vertices
                            .iter()
                            .position(|x| x == name)
                            .ok_or_else(|| Error::parse(p, format!("edge references undeclared vertex '{name}'")))
                    };
                    let iu = find(u, pos)?;
                    let iw = find(w, pos + u.len() + 1)?;
                    edges.push((iu, iw));
                }
            }
        } else {
            self.pos = save;
        }
        RaagGraph::new(vertices, &edges)
            .map(GroupModel::Raag)
            .map_err(|m| Error::parse(at, m))
    }
}

fn parse_count(at: usize, text: &str) -> Result<usize> {
    text.parse::<usize>()
        .map_err(|_| Error::parse(at, format!("expected a nonnegative integer, found '{text}'")))
}

fn split_offsets(text: &str, sep: char) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split(sep).map(move |item| {
        let here = offset;
        offset += item.len() + 1;
        (here, item)
    })
}

pub(super) fn write_spec(model: &GroupModel, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match model {
        GroupModel::Free { rank } => write!(f, "free rank={rank}"),
        GroupModel::FreeProductCyclic { orders } => {
            let list: Vec<String> = orders.iter().map(|m| m.to_string()).collect();
            write!(f, "cyclicfreeproduct orders={}", list.join(","))
        }
        GroupModel::Raag(g) => {
            write!(f, "raag vertices={}", g.vertices().join(","))?;
            if !g.edges().is_empty() {
                let list: Vec<String> = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| format!("{}-{}", g.vertices()[u], g.vertices()[v]))
                    .collect();
                write!(f, " edges={}", list.join(","))?;
            }
            Ok(())
        }
        GroupModel::ZPower { dim } => write!(f, "zd dim={dim}"),
        GroupModel::Product(l, r) => write!(f, "product ({l}) ({r})"),
    }
}
