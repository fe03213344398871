use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::group::{Element, GroupModel};

/// Marker for "not inside the enumerated ball".
pub const OUTSIDE: u32 = u32::MAX;

/// Default cap on the number of stored elements.
pub const DEFAULT_BUDGET: usize = 50_000_000;

/// Spheres `S_0..S_R` of a Cayley graph, each sorted in canonical order.
///
/// Elements are indexed layer by layer, so indices follow the canonical
/// shortlex order and `0..ball_size(n)` is the closed ball of radius `n`.
/// Besides the index map the ball keeps the right-multiplication table by
/// generators and a breadth-first spanning tree (`parent`, `parent_gen`),
/// which together let any translate `x * B_n` be walked with table lookups.
#[derive(Debug, Clone)]
pub struct LayeredBall {
    model: GroupModel,
    radius: usize,
    elements: Vec<Element>,
    offsets: Vec<usize>,
    index: FxHashMap<Element, u32>,
    generators: Vec<Element>,
    neighbors: Vec<u32>,
    parent: Vec<u32>,
    parent_gen: Vec<u8>,
}

/// Enumerates the closed ball of radius `radius` with the default budget.
pub fn enumerate(model: &GroupModel, radius: usize) -> Result<LayeredBall> {
    enumerate_with_budget(model, radius, DEFAULT_BUDGET)
}

/// Frontier expansion with a global index. An element first reached from
/// layer `n` has length `n + 1` because normal forms are geodesic.
pub fn enumerate_with_budget(model: &GroupModel, radius: usize, budget: usize) -> Result<LayeredBall> {
    let generators = model.generators();
    if generators.len() > u8::MAX as usize {
        return Err(Error::precondition("too many generators for ball tables"));
    }
    let identity = model.identity();
    let mut elements = vec![identity.clone()];
    let mut offsets = vec![0, 1];
    let mut index = FxHashMap::default();
    index.insert(identity, 0u32);
    let mut parent = vec![OUTSIDE];
    let mut parent_gen = vec![0u8];

    for n in 0..radius {
        let layer = offsets[n]..offsets[n + 1];
        let mut found: FxHashMap<Element, (u32, u8)> = FxHashMap::default();
        for i in layer {
            for (g, gen) in generators.iter().enumerate() {
                let y = model.multiply(&elements[i], gen);
                if y.length() == n + 1 {
                    found.entry(y).or_insert((i as u32, g as u8));
                }
            }
            if elements.len() + found.len() > budget {
                return Err(Error::resource(
                    n + 1,
                    format!("sphere {} pushes the ball past the budget of {budget} elements", n + 1),
                ));
            }
        }
        let mut next: Vec<(Element, (u32, u8))> = found.into_iter().collect();
        next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        for (y, (p, g)) in next {
            index.insert(y.clone(), elements.len() as u32);
            elements.push(y);
            parent.push(p);
            parent_gen.push(g);
        }
        offsets.push(elements.len());
        if elements.len() >= OUTSIDE as usize {
            return Err(Error::resource(n + 1, "ball exceeds the u32 index space"));
        }
    }

    let ng = generators.len();
    let mut neighbors = vec![OUTSIDE; elements.len() * ng];
    for (i, x) in elements.iter().enumerate() {
        for (g, gen) in generators.iter().enumerate() {
            if let Some(&j) = index.get(&model.multiply(x, gen)) {
                neighbors[i * ng + g] = j;
            }
        }
    }

    Ok(LayeredBall {
        model: model.clone(),
        radius,
        elements,
        offsets,
        index,
        generators,
        neighbors,
        parent,
        parent_gen,
    })
}

impl LayeredBall {
    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Number of elements in the whole ball.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }

    /// The sphere `S_n`, canonically sorted.
    pub fn sphere(&self, n: usize) -> &[Element] {
        assert!(n <= self.radius, "sphere {n} beyond radius {}", self.radius);
        &self.elements[self.offsets[n]..self.offsets[n + 1]]
    }

    /// Index range of `S_n`.
    pub fn sphere_range(&self, n: usize) -> std::ops::Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn sphere_size(&self, n: usize) -> usize {
        self.offsets[n + 1] - self.offsets[n]
    }

    pub fn sphere_sizes(&self) -> Vec<u64> {
        (0..=self.radius).map(|n| self.sphere_size(n) as u64).collect()
    }

    /// `|B_n|`, the closed ball of radius `n`.
    pub fn ball_size(&self, n: usize) -> usize {
        self.offsets[n.min(self.radius) + 1]
    }

    pub fn index_of(&self, x: &Element) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    /// Layer and position within the layer.
    pub fn locate(&self, x: &Element) -> Option<(usize, usize)> {
        let i = self.index_of(x)? as usize;
        let layer = self.layer_of(i as u32);
        Some((layer, i - self.offsets[layer]))
    }

    pub fn layer_of(&self, i: u32) -> usize {
        self.elements[i as usize].length()
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Index of `x_i * g_j`, or [`OUTSIDE`].
    pub fn neighbor(&self, i: u32, g: usize) -> u32 {
        self.neighbors[i as usize * self.generators.len() + g]
    }

    /// Breadth-first tree parent and the generator leading to `i`.
    pub fn parent(&self, i: u32) -> Option<(u32, usize)> {
        (i != 0).then(|| (self.parent[i as usize], self.parent_gen[i as usize] as usize))
    }

    /// Fails with a resource error unless the ball reaches `radius`.
    pub fn require_radius(&self, radius: usize, what: &str) -> Result<()> {
        if radius > self.radius {
            Err(Error::resource(
                radius,
                format!(
                    "{what} needs a ball of radius {radius}, enumerated radius is {}",
                    self.radius
                ),
            ))
        } else {
            Ok(())
        }
    }
}

/// Walks right translates `x * B_depth` through the multiplication table.
///
/// Reuses its buffers across calls; elements that leave the ball are carried
/// explicitly so the walk stays exact for groups whose translates re-enter.
pub struct Translator<'a> {
    ball: &'a LayeredBall,
    images: Vec<u32>,
    outside: Vec<Option<Element>>,
}

impl<'a> Translator<'a> {
    pub fn new(ball: &'a LayeredBall) -> Self {
        Translator {
            ball,
            images: Vec::new(),
            outside: Vec::new(),
        }
    }

    /// For every `v` with `|v| <= depth` (by ball index), the index of
    /// `start * v` in the ball or [`OUTSIDE`].
    pub fn translate(&mut self, start: &Element, depth: usize) -> &[u32] {
        let ball = self.ball;
        let n = ball.ball_size(depth);
        assert!(depth <= ball.radius, "translate depth {depth} beyond ball radius");
        self.images.clear();
        self.images.resize(n, OUTSIDE);
        if self.outside.len() < n {
            self.outside.resize(n, None);
        }
        match ball.index_of(start) {
            Some(i) => {
                self.images[0] = i;
                self.outside[0] = None;
            }
            None => self.outside[0] = Some(start.clone()),
        }
        for v in 1..n {
            let p = ball.parent[v] as usize;
            let g = ball.parent_gen[v] as usize;
            let pi = self.images[p];
            if pi != OUTSIDE {
                let j = ball.neighbor(pi, g);
                self.images[v] = j;
                self.outside[v] = if j == OUTSIDE {
                    Some(ball.model.multiply(ball.element(pi), &ball.generators[g]))
                } else {
                    None
                };
            } else {
                let x = ball.model.multiply(
                    self.outside[p].as_ref().expect("outside parent carries its element"),
                    &ball.generators[g],
                );
                match ball.index_of(&x) {
                    Some(j) => {
                        self.images[v] = j;
                        self.outside[v] = None;
                    }
                    None => self.outside[v] = Some(x),
                }
            }
        }
        &self.images
    }

    /// Same as [`Translator::translate`] starting from a ball index.
    pub fn translate_index(&mut self, start: u32, depth: usize) -> &[u32] {
        let x = self.ball.element(start).clone();
        self.translate(&x, depth)
    }

    /// The element `start * v` from the last walk.
    pub fn image(&self, v: usize) -> Element {
        match self.images[v] {
            OUTSIDE => self.outside[v].clone().expect("walked element"),
            j => self.ball.element(j).clone(),
        }
    }
}

/// Distinct elements of `set * S_r` (or `* B_r` when `ball_shaped`),
/// including those outside the enumerated ball.
pub fn translate_set(ball: &LayeredBall, set: impl IntoIterator<Item = Element>, r: usize) -> FxHashSet<Element> {
    let mut out = FxHashSet::default();
    let mut walker = Translator::new(ball);
    let range = ball.sphere_range(r);
    for x in set {
        walker.translate(&x, r);
        for v in range.clone() {
            out.insert(walker.image(v));
        }
    }
    out
}
