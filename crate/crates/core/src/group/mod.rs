//! Group models with geodesic normal forms.
//!
//! Every supported family comes with a canonical symmetric generating set and
//! a normal form that is unique per group element and geodesic, so the word
//! length of the stored representative *is* the word metric. Word-based
//! families (free groups, free products of cyclic groups, right-angled Artin
//! groups) encode a generator `g` as the letter `2g` and its formal inverse
//! as `2g + 1`. Involutions only ever use the even letter.

mod cyclic;
mod raag;
mod spec;
mod word;

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub use cyclic::syllable_count;
pub use raag::RaagGraph;
pub use spec::parse_spec;

/// Letters of a word-based normal form.
pub type Word = SmallVec<[u8; 22]>;

/// Largest number of generators a word-based model may have (letters are `u8`).
pub const MAX_GENERATORS: usize = 127;

/// One letter of the symmetric generating set: a generator index and a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub index: u8,
    pub inverse: bool,
}

impl GeneratorId {
    pub fn letter(self) -> u8 {
        2 * self.index + u8::from(self.inverse)
    }

    pub fn from_letter(letter: u8) -> Self {
        GeneratorId {
            index: letter >> 1,
            inverse: letter & 1 == 1,
        }
    }

    pub fn inverted(self) -> Self {
        GeneratorId {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// Whether spheres grow exponentially or polynomially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    Exponential,
    Polynomial,
}

/// A finitely generated group together with its canonical generating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupModel {
    /// Free group of the given rank.
    Free { rank: usize },
    /// Free product of cyclic groups of the given orders.
    FreeProductCyclic { orders: Vec<u32> },
    /// Right-angled Artin group of a finite simple graph.
    Raag(RaagGraph),
    /// The lattice `Z^dim` with the standard basis.
    ZPower { dim: usize },
    /// Direct product with the l1 (sum) word length.
    Product(Box<GroupModel>, Box<GroupModel>),
}

/// A group element in canonical normal form.
///
/// Equal group elements are equal as values, so `Eq`/`Hash` can be used for
/// deduplication. `Ord` is shortlex: shorter elements first, then the letter
/// order of the declared generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Word(Word),
    Lattice(Vec<i64>),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    /// Geodesic word length of the normal form.
    pub fn length(&self) -> usize {
        match self {
            Element::Word(w) => w.len(),
            Element::Lattice(v) => v.iter().map(|c| c.unsigned_abs() as usize).sum(),
            Element::Pair(a, b) => a.length() + b.length(),
        }
    }

    fn cmp_same_length(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Word(a), Element::Word(b)) => a.cmp(b),
            // larger coordinates first so that a < a^-1, matching word models
            (Element::Lattice(a), Element::Lattice(b)) => b.cmp(a),
            (Element::Pair(a1, b1), Element::Pair(a2, b2)) => a1.cmp(a2).then_with(|| b1.cmp(b2)),
            (a, b) => a.variant_rank().cmp(&b.variant_rank()),
        }
    }

    fn variant_rank(&self) -> u8 {
        match self {
            Element::Word(_) => 0,
            Element::Lattice(_) => 1,
            Element::Pair(..) => 2,
        }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.cmp_same_length(other))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupModel {
    pub fn free(rank: usize) -> Self {
        GroupModel::Free { rank }
    }

    pub fn z_power(dim: usize) -> Self {
        GroupModel::ZPower { dim }
    }

    pub fn free_product_cyclic(orders: &[u32]) -> Self {
        GroupModel::FreeProductCyclic {
            orders: orders.to_vec(),
        }
    }

    pub fn product(left: GroupModel, right: GroupModel) -> Self {
        GroupModel::Product(Box::new(left), Box::new(right))
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupModel::Free { .. } | GroupModel::FreeProductCyclic { .. } | GroupModel::Raag(_) => {
                Element::Word(Word::new())
            }
            GroupModel::ZPower { dim } => Element::Lattice(vec![0; *dim]),
            GroupModel::Product(l, r) => Element::Pair(Box::new(l.identity()), Box::new(r.identity())),
        }
    }

    /// Number of distinct generators before symmetrisation.
    pub fn generator_count(&self) -> usize {
        match self {
            GroupModel::Free { rank } => *rank,
            GroupModel::FreeProductCyclic { orders } => orders.len(),
            GroupModel::Raag(g) => g.vertex_count(),
            GroupModel::ZPower { dim } => *dim,
            GroupModel::Product(l, r) => l.generator_count() + r.generator_count(),
        }
    }

    /// The canonical symmetric generating set, in declared order: each
    /// generator followed by its inverse (involutions appear once).
    pub fn generators(&self) -> Vec<Element> {
        match self {
            GroupModel::Free { rank } => (0..*rank)
                .flat_map(|g| [letter_word(2 * g as u8), letter_word(2 * g as u8 + 1)])
                .collect(),
            GroupModel::Raag(graph) => (0..graph.vertex_count())
                .flat_map(|g| [letter_word(2 * g as u8), letter_word(2 * g as u8 + 1)])
                .collect(),
            GroupModel::FreeProductCyclic { orders } => {
                let mut gens = Vec::new();
                for (g, &m) in orders.iter().enumerate() {
                    gens.push(letter_word(2 * g as u8));
                    if m > 2 {
                        gens.push(letter_word(2 * g as u8 + 1));
                    }
                }
                gens
            }
            GroupModel::ZPower { dim } => (0..*dim)
                .flat_map(|i| {
                    let mut plus = vec![0; *dim];
                    plus[i] = 1;
                    let mut minus = vec![0; *dim];
                    minus[i] = -1;
                    [Element::Lattice(plus), Element::Lattice(minus)]
                })
                .collect(),
            GroupModel::Product(l, r) => {
                let le = l.identity();
                let re = r.identity();
                let mut gens: Vec<Element> = l
                    .generators()
                    .into_iter()
                    .map(|g| Element::Pair(Box::new(g), Box::new(re.clone())))
                    .collect();
                gens.extend(
                    r.generators()
                        .into_iter()
                        .map(|g| Element::Pair(Box::new(le.clone()), Box::new(g))),
                );
                gens
            }
        }
    }

    /// Group product `x * y` in normal form.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (GroupModel::Free { .. }, Element::Word(a), Element::Word(b)) => {
                let mut out = a.clone();
                for &letter in b {
                    free_push(&mut out, letter);
                }
                Element::Word(out)
            }
            (GroupModel::FreeProductCyclic { orders }, Element::Word(a), Element::Word(b)) => {
                Element::Word(cyclic::normalize(orders, a.iter().chain(b.iter()).copied()))
            }
            (GroupModel::Raag(graph), Element::Word(a), Element::Word(b)) => Element::Word(graph.multiply(a, b)),
            (GroupModel::ZPower { .. }, Element::Lattice(a), Element::Lattice(b)) => {
                Element::Lattice(a.iter().zip(b).map(|(p, q)| p + q).collect())
            }
            (GroupModel::Product(l, r), Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::Pair(Box::new(l.multiply(a1, a2)), Box::new(r.multiply(b1, b2)))
            }
            _ => panic!("element does not belong to model {self}"),
        }
    }

    pub fn invert(&self, x: &Element) -> Element {
        match (self, x) {
            (GroupModel::Free { .. }, Element::Word(a)) => Element::Word(a.iter().rev().map(|l| l ^ 1).collect()),
            (GroupModel::FreeProductCyclic { orders }, Element::Word(a)) => Element::Word(cyclic::normalize(
                orders,
                a.iter().rev().map(|&l| cyclic::invert_letter(orders, l)),
            )),
            (GroupModel::Raag(graph), Element::Word(a)) => {
                let reversed: Vec<u8> = a.iter().rev().map(|l| l ^ 1).collect();
                Element::Word(graph.lex_normal(&reversed))
            }
            (GroupModel::ZPower { .. }, Element::Lattice(a)) => Element::Lattice(a.iter().map(|c| -c).collect()),
            (GroupModel::Product(l, r), Element::Pair(a, b)) => {
                Element::Pair(Box::new(l.invert(a)), Box::new(r.invert(b)))
            }
            _ => panic!("element does not belong to model {self}"),
        }
    }

    /// Geodesic word length. For free products a syllable `g^e` costs
    /// `min(e, m - e)`; for products the factor lengths add.
    pub fn length(&self, x: &Element) -> usize {
        x.length()
    }

    /// Left-invariant word metric `|x^-1 y|`.
    pub fn distance(&self, x: &Element, y: &Element) -> usize {
        match (x, y) {
            (Element::Lattice(a), Element::Lattice(b)) => {
                a.iter().zip(b).map(|(p, q)| (p - q).unsigned_abs() as usize).sum()
            }
            (Element::Pair(a1, b1), Element::Pair(a2, b2)) => match self {
                GroupModel::Product(l, r) => l.distance(a1, a2) + r.distance(b1, b2),
                _ => panic!("element does not belong to model {self}"),
            },
            _ => self.multiply(&self.invert(x), y).length(),
        }
    }

    /// Normal form of the product of a sequence of generator letters (word
    /// models) or of the generators returned by [`GroupModel::generators`].
    pub fn evaluate(&self, generator_indices: &[usize]) -> Element {
        let gens = self.generators();
        generator_indices
            .iter()
            .fold(self.identity(), |acc, &g| self.multiply(&acc, &gens[g]))
    }

    /// Checks that `x` is a valid normal form for this model.
    pub fn is_normal_form(&self, x: &Element) -> bool {
        match (self, x) {
            (GroupModel::Free { rank }, Element::Word(w)) => {
                w.iter().all(|&l| ((l >> 1) as usize) < *rank) && w.windows(2).all(|p| p[0] != p[1] ^ 1)
            }
            (GroupModel::FreeProductCyclic { orders }, Element::Word(w)) => {
                w.iter().all(|&l| ((l >> 1) as usize) < orders.len())
                    && cyclic::normalize(orders, w.iter().copied()) == *w
            }
            (GroupModel::Raag(graph), Element::Word(w)) => {
                w.iter().all(|&l| ((l >> 1) as usize) < graph.vertex_count()) && graph.multiply(&Word::new(), w) == *w
            }
            (GroupModel::ZPower { dim }, Element::Lattice(v)) => v.len() == *dim,
            (GroupModel::Product(l, r), Element::Pair(a, b)) => l.is_normal_form(a) && r.is_normal_form(b),
            _ => false,
        }
    }

    /// Structural growth type of the model with its canonical generators.
    pub fn growth_class(&self) -> GrowthClass {
        match self {
            GroupModel::Free { rank } if *rank >= 2 => GrowthClass::Exponential,
            GroupModel::Free { .. } => GrowthClass::Polynomial,
            GroupModel::FreeProductCyclic { orders } => {
                if orders.len() == 2 && orders.iter().all(|&m| m == 2) {
                    GrowthClass::Polynomial
                } else {
                    GrowthClass::Exponential
                }
            }
            GroupModel::Raag(graph) => {
                if graph.is_complete() {
                    GrowthClass::Polynomial
                } else {
                    GrowthClass::Exponential
                }
            }
            GroupModel::ZPower { .. } => GrowthClass::Polynomial,
            GroupModel::Product(l, r) => {
                if l.growth_class() == GrowthClass::Exponential || r.growth_class() == GrowthClass::Exponential {
                    GrowthClass::Exponential
                } else {
                    GrowthClass::Polynomial
                }
            }
        }
    }

    /// Parses a textual element such as `a.b^-1.a`, `(a,b^2)` or `e` and
    /// returns its normal form.
    pub fn parse_element(&self, text: &str) -> crate::Result<Element> {
        word::parse_element(self, text)
    }

    /// Canonical textual form of an element, accepted by
    /// [`GroupModel::parse_element`].
    pub fn format_element(&self, x: &Element) -> String {
        word::format_element(self, x)
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        spec::write_spec(self, f)
    }
}

fn letter_word(letter: u8) -> Element {
    let mut w = Word::new();
    w.push(letter);
    Element::Word(w)
}

fn free_push(word: &mut Word, letter: u8) {
    if word.last() == Some(&(letter ^ 1)) {
        word.pop();
    } else {
        word.push(letter);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u8]) -> Element {
        Element::Word(letters.iter().copied().collect())
    }

    #[test]
    fn free_cancellation() {
        let f2 = GroupModel::free(2);
        let a = w(&[0]);
        let a_inv = w(&[1]);
        assert_eq!(f2.multiply(&a, &a_inv), f2.identity());
    }

    #[test]
    fn free_length_of_reduced_word() {
        let f2 = GroupModel::free(2);
        // a b^-1 a
        assert_eq!(f2.length(&w(&[0, 3, 0])), 3);
    }

    #[test]
    fn free_distance_between_generators() {
        let f2 = GroupModel::free(2);
        assert_eq!(f2.distance(&w(&[0]), &w(&[2])), 2);
        assert_eq!(f2.distance(&w(&[0, 2]), &w(&[0, 2])), 0);
    }

    #[test]
    fn raag_commuting_letters_reorder() {
        let model = parse_spec("raag vertices=a,b edges=a-b").unwrap();
        // (ab) a = a^2 b
        let x = model.multiply(&w(&[0, 2]), &w(&[0]));
        assert_eq!(x, w(&[0, 0, 2]));
        // b a = a b
        assert_eq!(model.multiply(&w(&[2]), &w(&[0])), w(&[0, 2]));
    }

    #[test]
    fn raag_cancels_across_commuting_letters() {
        let model = parse_spec("raag vertices=a,b,c edges=a-b,b-c").unwrap();
        // a b a^-1 = b
        let x = model.multiply(&w(&[0, 2]), &w(&[1]));
        assert_eq!(x, w(&[2]));
        // a c a^-1 does not reduce: a and c do not commute
        let y = model.multiply(&w(&[0, 4]), &w(&[1]));
        assert_eq!(y.length(), 3);
    }

    #[test]
    fn cyclic_free_product_relations() {
        let model = GroupModel::free_product_cyclic(&[2, 3]);
        let t = w(&[2]);
        let t2 = model.multiply(&t, &t);
        assert_eq!(model.length(&t2), 1);
        assert_eq!(model.multiply(&t, &t2), model.identity());
        let s = w(&[0]);
        assert_eq!(model.multiply(&s, &s), model.identity());
    }

    #[test]
    fn lattice_length_is_l1() {
        let z2 = GroupModel::z_power(2);
        assert_eq!(z2.length(&Element::Lattice(vec![3, -2])), 5);
        assert_eq!(
            z2.distance(&Element::Lattice(vec![1, 0]), &Element::Lattice(vec![0, 1])),
            2
        );
    }

    #[test]
    fn product_length_adds() {
        let model = GroupModel::product(GroupModel::free(2), GroupModel::z_power(1));
        let x = Element::Pair(Box::new(w(&[0, 2])), Box::new(Element::Lattice(vec![-3])));
        assert_eq!(model.length(&x), 5);
        assert_eq!(model.multiply(&x, &model.invert(&x)), model.identity());
    }

    #[test]
    fn shortlex_order() {
        let f2 = GroupModel::free(2);
        let gens = f2.generators();
        let mut sorted = gens.clone();
        sorted.sort();
        assert_eq!(gens, sorted);
        assert!(f2.identity() < gens[3]);
        assert!(w(&[3]) < w(&[0, 0]));
    }

    #[test]
    fn generator_counts() {
        assert_eq!(GroupModel::free(2).generators().len(), 4);
        assert_eq!(GroupModel::free_product_cyclic(&[2, 3]).generators().len(), 3);
        assert_eq!(GroupModel::z_power(3).generators().len(), 6);
        let p = GroupModel::product(GroupModel::free(2), GroupModel::free(2));
        assert_eq!(p.generators().len(), 8);
    }
}
