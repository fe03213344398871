use super::Word;

/// Defining graph of a right-angled Artin group. Generators commute exactly
/// when their vertices are joined by an edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RaagGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacent: Vec<Vec<bool>>,
}

impl RaagGraph {
    /// Builds the graph; edges are unordered pairs of vertex indices. Loops
    /// and repeated edges are rejected.
    pub fn new(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, String> {
        let n = vertices.len();
        if n == 0 {
            return Err("raag needs at least one vertex".into());
        }
        if n > super::MAX_GENERATORS {
            return Err(format!("at most {} vertices supported", super::MAX_GENERATORS));
        }
        let mut adjacent = vec![vec![false; n]; n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(format!("edge ({u},{v}) references a missing vertex"));
            }
            if u == v {
                return Err(format!("loop at vertex {}", vertices[u]));
            }
            if adjacent[u][v] {
                return Err(format!("repeated edge {}-{}", vertices[u], vertices[v]));
            }
            adjacent[u][v] = true;
            adjacent[v][u] = true;
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(RaagGraph {
            vertices,
            edges: normalized,
            adjacent,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacent[u][v]
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edges.len() == n * (n - 1) / 2
    }

    /// Size of the largest clique (the dimension of the group).
    pub fn clique_number(&self) -> usize {
        fn grow(g: &RaagGraph, clique: &mut Vec<usize>, start: usize, best: &mut usize) {
            *best = (*best).max(clique.len());
            for v in start..g.vertex_count() {
                if clique.iter().all(|&u| g.adjacent(u, v)) {
                    clique.push(v);
                    grow(g, clique, v + 1, best);
                    clique.pop();
                }
            }
        }
        let mut best = 0;
        grow(self, &mut Vec::new(), 0, &mut best);
        best
    }

    /// Two letters commute when their vertices are distinct and adjacent.
    pub fn letters_commute(&self, a: u8, b: u8) -> bool {
        let (u, v) = ((a >> 1) as usize, (b >> 1) as usize);
        u != v && self.adjacent[u][v]
    }

    /// Appends one letter to a reduced word, cancelling it against an inverse
    /// letter that can be shuffled next to it. The result stays reduced.
    fn push_reduced(&self, word: &mut Vec<u8>, letter: u8) {
        for i in (0..word.len()).rev() {
            let other = word[i];
            if other == letter ^ 1 {
                word.remove(i);
                return;
            }
            if !self.letters_commute(other, letter) {
                break;
            }
        }
        word.push(letter);
    }

    /// Lexicographically least word in the commutation class of `word`.
    pub(super) fn lex_normal(&self, word: &[u8]) -> Word {
        let mut rest: Vec<u8> = word.to_vec();
        let mut out = Word::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                if best.is_some_and(|b| rest[b] <= rest[i]) {
                    continue;
                }
                if rest[..i].iter().all(|&p| self.letters_commute(p, rest[i])) {
                    best = Some(i);
                }
            }
            let pick = best.expect("the first remaining letter is always available");
            out.push(rest.remove(pick));
        }
        out
    }

    pub(super) fn multiply(&self, a: &[u8], b: &[u8]) -> Word {
        let mut word: Vec<u8> = a.to_vec();
        for &l in b {
            self.push_reduced(&mut word, l);
        }
        self.lex_normal(&word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> RaagGraph {
        RaagGraph::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_repeats() {
        let v = vec!["a".to_string(), "b".to_string()];
        assert!(RaagGraph::new(v.clone(), &[(0, 0)]).is_err());
        assert!(RaagGraph::new(v.clone(), &[(0, 1), (1, 0)]).is_err());
        assert!(RaagGraph::new(v, &[(0, 2)]).is_err());
    }

    #[test]
    fn clique_number_of_path() {
        assert_eq!(path3().clique_number(), 2);
    }

    #[test]
    fn lex_normal_moves_small_letters_forward() {
        let g = path3();
        // c b -> b c (b < c and they commute)
        assert_eq!(g.lex_normal(&[4, 2]).as_slice(), &[2, 4]);
        // c a stays: a and c do not commute
        assert_eq!(g.lex_normal(&[4, 0]).as_slice(), &[4, 0]);
        // b c a -> b c a  (a blocked by c), while c b a -> b c a
        assert_eq!(g.lex_normal(&[4, 2, 0]).as_slice(), &[2, 4, 0]);
    }

    #[test]
    fn cancellation_blocked_by_noncommuting_letter() {
        let g = path3();
        assert_eq!(g.multiply(&[0, 4], &[1]).len(), 3);
        assert!(g.multiply(&[2, 0], &[3]).as_slice() == [0]);
    }
}
