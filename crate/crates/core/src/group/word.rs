//! Textual elements: `e`, `a.b^-1.a`, `a^3.b^-2`, `(a.b,c)` for products.

use super::{Element, GroupModel};
use crate::error::{Error, Result};

const AUTO_NAMES: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

/// Display name of generator `index` in a model without vertex names.
pub(crate) fn auto_name(index: usize) -> String {
    match AUTO_NAMES.get(index) {
        Some(&c) => (c as char).to_string(),
        None => format!("g{index}"),
    }
}

fn generator_name(model: &GroupModel, index: usize) -> String {
    match model {
        GroupModel::Raag(g) => g.vertices()[index].clone(),
        _ => auto_name(index),
    }
}

fn generator_index(model: &GroupModel, name: &str) -> Option<usize> {
    let count = model.generator_count();
    (0..count).find(|&i| generator_name(model, i) == name)
}

pub(super) fn parse_element(model: &GroupModel, text: &str) -> Result<Element> {
    parse_at(model, text.trim(), 0)
}

fn parse_at(model: &GroupModel, text: &str, base: usize) -> Result<Element> {
    if let GroupModel::Product(l, r) = model {
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(base, "product element must be '(left,right)'"))?;
        let split =
            top_level_comma(inner).ok_or_else(|| Error::parse(base, "product element needs a top-level ','"))?;
        let left = parse_at(l, &inner[..split], base + 1)?;
        let right = parse_at(r, &inner[split + 1..], base + 2 + split)?;
        return Ok(Element::Pair(Box::new(left), Box::new(right)));
    }
    let mut acc = model.identity();
    if text == "e" {
        return Ok(acc);
    }
    let gens = model.generators();
    let mut offset = 0;
    for token in text.split('.') {
        let at = base + offset;
        offset += token.len() + 1;
        let (name, power) = match token.split_once('^') {
            Some((n, p)) => {
                let k: i64 = p
                    .parse()
                    .map_err(|_| Error::parse(at + n.len() + 1, format!("bad exponent '{p}'")))?;
                (n, k)
            }
            None => (token, 1),
        };
        let index =
            generator_index(model, name).ok_or_else(|| Error::parse(at, format!("unknown generator '{name}'")))?;
        let g = &gens[positive_generator_slot(model, index)];
        let step = if power < 0 { model.invert(g) } else { g.clone() };
        for _ in 0..power.unsigned_abs() {
            acc = model.multiply(&acc, &step);
        }
    }
    Ok(acc)
}

/// Position of generator `index` in `model.generators()`.
fn positive_generator_slot(model: &GroupModel, index: usize) -> usize {
    match model {
        GroupModel::FreeProductCyclic { orders } => orders[..index].iter().map(|&m| if m == 2 { 1 } else { 2 }).sum(),
        _ => 2 * index,
    }
}

fn top_level_comma(text: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

pub(super) fn format_element(model: &GroupModel, x: &Element) -> String {
    match (model, x) {
        (GroupModel::Product(l, r), Element::Pair(a, b)) => {
            format!("({},{})", format_element(l, a), format_element(r, b))
        }
        (_, Element::Word(w)) => {
            let mut parts = Vec::new();
            let mut i = 0;
            while i < w.len() {
                let letter = w[i];
                let run = w[i..].iter().take_while(|&&l| l == letter).count();
                let name = generator_name(model, (letter >> 1) as usize);
                let k = if letter & 1 == 1 { -(run as i64) } else { run as i64 };
                parts.push(power_token(&name, k));
                i += run;
            }
            join_or_identity(parts)
        }
        (_, Element::Lattice(v)) => {
            let parts = v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| power_token(&generator_name(model, i), c))
                .collect();
            join_or_identity(parts)
        }
        _ => panic!("element does not belong to model {model}"),
    }
}

fn power_token(name: &str, k: i64) -> String {
    if k == 1 {
        name.to_string()
    } else {
        format!("{name}^{k}")
    }
}

fn join_or_identity(parts: Vec<String>) -> String {
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.join(".")
    }
}
