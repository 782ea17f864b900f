//! Backtrack searches over a stabilizer chain.
//!
//! Each search walks the tree of base-point images of the ambient group's
//! chain and returns generators of the subgroup of all elements passing
//! the leaf test. Partial assignments are pruned with problem-specific
//! state (commutation propagation for centralizers, orbit maps for
//! normalizers, a prefix sifter for intersections). The set of solutions
//! must form a subgroup: the search grows a known subgroup K and skips
//! first-level images already covered by the K-orbit of the first base
//! point, so large results are found from few tree leaves.

use crate::group::{chain_with_base, PermGroup, PrefixSifter, StabilizerChain};
use crate::perm::Permutation;

trait Partial: Clone {
    /// Record that the element maps `a` to `b`; false means contradiction.
    fn assign(&mut self, a: u32, b: u32) -> bool;
    /// Image of `a` forced by the state so far, if any.
    fn forced(&self, a: u32) -> Option<u32>;
}

trait Problem {
    type State: Partial;
    fn initial(&self) -> Self::State;
    /// Exact test on a complete element.
    fn accepts(&self, g: &Permutation) -> bool;
}

/// Partial injective point map with pluggable propagation.
#[derive(Clone)]
struct PointMap {
    img: Vec<Option<u32>>,
    pre: Vec<Option<u32>>,
}

impl PointMap {
    fn new(degree: usize) -> PointMap {
        PointMap {
            img: vec![None; degree],
            pre: vec![None; degree],
        }
    }

    /// Returns false on conflict; true if consistent (possibly a no-op).
    /// Newly fixed pairs are appended to `fresh`.
    fn set(&mut self, a: u32, b: u32, fresh: &mut Vec<(u32, u32)>) -> bool {
        match self.img[a as usize] {
            Some(x) => return x == b,
            None => {}
        }
        if let Some(x) = self.pre[b as usize] {
            return x == a;
        }
        self.img[a as usize] = Some(b);
        self.pre[b as usize] = Some(a);
        fresh.push((a, b));
        true
    }
}

/// Centralizer search state: g h = h g for every generator h of H forces
/// g(a^h) = g(a)^h, which is propagated to a fixpoint.
#[derive(Clone)]
struct CentralizerState {
    map: PointMap,
    hgens: std::rc::Rc<Vec<Permutation>>,
}

impl Partial for CentralizerState {
    fn assign(&mut self, a: u32, b: u32) -> bool {
        let mut fresh = Vec::new();
        if !self.map.set(a, b, &mut fresh) {
            return false;
        }
        while let Some((a, b)) = fresh.pop() {
            for h in self.hgens.iter() {
                if !self.map.set(h.apply(a), h.apply(b), &mut fresh) {
                    return false;
                }
            }
        }
        true
    }

    fn forced(&self, a: u32) -> Option<u32> {
        self.map.img[a as usize]
    }
}

struct CentralizerProblem {
    hgens: std::rc::Rc<Vec<Permutation>>,
    degree: usize,
}

impl Problem for CentralizerProblem {
    type State = CentralizerState;

    fn initial(&self) -> CentralizerState {
        CentralizerState {
            map: PointMap::new(self.degree),
            hgens: self.hgens.clone(),
        }
    }

    fn accepts(&self, g: &Permutation) -> bool {
        self.hgens.iter().all(|h| g.then(h) == h.then(g))
    }
}

/// Normalizer search state: an element normalizing H permutes the H-orbits,
/// so the induced orbit-to-orbit map must be well defined, injective and
/// size-preserving.
#[derive(Clone)]
struct NormalizerState {
    orbit_map: PointMap,
    orbit_id: std::rc::Rc<Vec<u32>>,
    orbit_size: std::rc::Rc<Vec<u32>>,
}

impl Partial for NormalizerState {
    fn assign(&mut self, a: u32, b: u32) -> bool {
        let oa = self.orbit_id[a as usize];
        let ob = self.orbit_id[b as usize];
        if self.orbit_size[oa as usize] != self.orbit_size[ob as usize] {
            return false;
        }
        let mut fresh = Vec::new();
        self.orbit_map.set(oa, ob, &mut fresh)
    }

    fn forced(&self, _a: u32) -> Option<u32> {
        None
    }
}

struct NormalizerProblem {
    h: PermGroup,
    orbit_id: std::rc::Rc<Vec<u32>>,
    orbit_size: std::rc::Rc<Vec<u32>>,
}

impl Problem for NormalizerProblem {
    type State = NormalizerState;

    fn initial(&self) -> NormalizerState {
        NormalizerState {
            orbit_map: PointMap::new(self.orbit_id.len()),
            orbit_id: self.orbit_id.clone(),
            orbit_size: self.orbit_size.clone(),
        }
    }

    fn accepts(&self, g: &Permutation) -> bool {
        self.h
            .generators()
            .iter()
            .all(|h| self.h.contains_unchecked(&h.conjugated_by(g)))
    }
}

/// Intersection search state: sift the growing base-image prefix through
/// the other group's chain (built on the same base) and die as soon as no
/// element of that group matches.
#[derive(Clone)]
struct IntersectionState<'a> {
    sifter: PrefixSifter<'a>,
}

impl<'a> Partial for IntersectionState<'a> {
    fn assign(&mut self, _a: u32, b: u32) -> bool {
        self.sifter.feed(b)
    }

    fn forced(&self, _a: u32) -> Option<u32> {
        None
    }
}

struct IntersectionProblem<'a> {
    other: &'a PermGroup,
    other_chain: &'a StabilizerChain,
}

impl<'a> Problem for IntersectionProblem<'a> {
    type State = IntersectionState<'a>;

    fn initial(&self) -> IntersectionState<'a> {
        IntersectionState {
            sifter: PrefixSifter::new(self.other_chain),
        }
    }

    fn accepts(&self, g: &Permutation) -> bool {
        self.other.contains_unchecked(g)
    }
}

struct Search<'a, P: Problem> {
    group: &'a PermGroup,
    problem: P,
    bases: Vec<u32>,
    found: Vec<Permutation>,
    known: PermGroup,
}

impl<'a, P: Problem> Search<'a, P> {
    fn run(group: &'a PermGroup, problem: P) -> Vec<Permutation> {
        let bases = group.chain().levels.iter().map(|l| l.base).collect();
        let mut search = Search {
            group,
            problem,
            bases,
            found: Vec::new(),
            known: PermGroup::trivial(group.degree()),
        };
        let state = search.problem.initial();
        let sigma = Permutation::identity(group.degree());
        search.descend(0, sigma, state);
        search.found
    }

    fn descend(&mut self, level: usize, sigma: Permutation, state: P::State) {
        let chain = self.group.chain();
        if level == chain.levels.len() {
            if self.problem.accepts(&sigma) && !self.known.contains_unchecked(&sigma) {
                self.found.push(sigma.clone());
                self.known =
                    PermGroup::from_generators(self.group.degree(), self.found.clone())
                        .expect("subgroup of bounded group stays within caps");
            }
            return;
        }
        let base = self.bases[level];
        // Candidate orbit points: base point first (the coset pruning
        // argument needs the base-fixing subtree explored before any
        // skipping can happen), then ascending for determinism.
        let mut points: Vec<u32> = chain.levels[level].orbit.clone();
        points.sort_unstable();
        if let Some(pos) = points.iter().position(|&p| p == base) {
            points.remove(pos);
            points.insert(0, base);
        }
        for p in points {
            let y = sigma.apply(p);
            // First-level coset pruning: a solution sending the first base
            // point into its orbit under the found subgroup K factors as
            // (solution fixing the base point) * (element of K), and the
            // base-fixing solutions are already in K.
            if level == 0 && y != base {
                let flags = orbit_flags(&self.known, base, self.group.degree());
                if flags[y as usize] {
                    continue;
                }
            }
            if let Some(forced) = state.forced(base) {
                if forced != y {
                    continue;
                }
            }
            let mut next_state = state.clone();
            if !next_state.assign(base, y) {
                continue;
            }
            let u = chain.levels[level].transversal[p as usize]
                .as_ref()
                .expect("orbit point has a transversal element");
            self.descend(level + 1, u.then(&sigma), next_state);
        }
    }
}

fn orbit_flags(k: &PermGroup, base: u32, degree: usize) -> Vec<bool> {
    let mut flags = vec![false; degree];
    let mut queue = vec![base];
    flags[base as usize] = true;
    while let Some(p) = queue.pop() {
        for g in k.generators() {
            let q = g.apply(p);
            if !flags[q as usize] {
                flags[q as usize] = true;
                queue.push(q);
            }
        }
    }
    flags
}

/// {g in G : gh = hg for all h in H}.
pub(crate) fn centralizer_gens(group: &PermGroup, h: &PermGroup) -> Vec<Permutation> {
    if h.is_trivial() {
        return group.generators().to_vec();
    }
    let problem = CentralizerProblem {
        hgens: std::rc::Rc::new(h.generators().to_vec()),
        degree: group.degree(),
    };
    Search::run(group, problem)
}

/// {g in G : H^g = H}.
pub(crate) fn normalizer_gens(group: &PermGroup, h: &PermGroup) -> Vec<Permutation> {
    // Normal subgroups short-circuit: conjugating generators is cheap.
    let normal = h
        .generators()
        .iter()
        .all(|x| group.generators().iter().all(|g| h.contains_unchecked(&x.conjugated_by(g))));
    if normal {
        return group.generators().to_vec();
    }
    let degree = group.degree();
    let mut orbit_id = vec![u32::MAX; degree];
    let mut sizes = Vec::new();
    for start in 0..degree as u32 {
        if orbit_id[start as usize] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        let mut queue = vec![start];
        orbit_id[start as usize] = id;
        let mut size = 1u32;
        while let Some(p) = queue.pop() {
            for g in h.generators() {
                let q = g.apply(p);
                if orbit_id[q as usize] == u32::MAX {
                    orbit_id[q as usize] = id;
                    size += 1;
                    queue.push(q);
                }
            }
        }
        sizes.push(size);
    }
    let orbit_size: Vec<u32> = orbit_id.iter().map(|&o| sizes[o as usize]).collect();
    let problem = NormalizerProblem {
        h: h.clone(),
        orbit_id: std::rc::Rc::new(orbit_id),
        orbit_size: std::rc::Rc::new(orbit_size),
    };
    Search::run(group, problem)
}

/// Generators of A ∩ B (same degree assumed).
pub(crate) fn intersection_gens(a: &PermGroup, b: &PermGroup) -> Vec<Permutation> {
    if b.contains_group(a) {
        return a.generators().to_vec();
    }
    if a.contains_group(b) {
        return b.generators().to_vec();
    }
    // Search in the smaller group, pruning against the other's chain
    // rebuilt on the same base sequence.
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let bases: Vec<u32> = small.chain().levels.iter().map(|l| l.base).collect();
    let other_chain = chain_with_base(large, &bases);
    let problem = IntersectionProblem {
        other: large,
        other_chain: &other_chain,
    };
    Search::run(small, problem)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree).unwrap())
            .collect();
        PermGroup::from_generators(degree, gens).unwrap()
    }

    fn order_of(degree: usize, gens: Vec<Permutation>) -> u64 {
        PermGroup::from_generators(degree, gens).unwrap().order()
    }

    /// Brute-force filter over all elements, the oracle the backtrack must
    /// match on small groups.
    fn filter_order(g: &PermGroup, pred: impl Fn(&Permutation) -> bool) -> u64 {
        let elements = g.elements().unwrap();
        let passing: Vec<Permutation> = elements.iter().filter(|e| pred(e)).cloned().collect();
        order_of(g.degree(), passing)
    }

    #[test]
    fn centralizer_matches_element_filter() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let cases = ["(1 2)", "(1 2)(3 4)", "(1 2 3)", "(1 2 3 4)"];
        for c in cases {
            let h = grp(4, &[c]);
            let bt = order_of(4, centralizer_gens(&s4, &h));
            let ef = filter_order(&s4, |e| {
                h.generators().iter().all(|x| e.then(x) == x.then(e))
            });
            assert_eq!(bt, ef, "centralizer of {c}");
        }
    }

    #[test]
    fn normalizer_matches_element_filter() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        for c in ["(1 2)", "(1 3)(2 4)", "(1 2 3)", "(1 2 3 4)"] {
            let h = grp(4, &[c]);
            let bt = order_of(4, normalizer_gens(&s4, &h));
            let ef = filter_order(&s4, |e| {
                h.generators().iter().all(|x| h.contains_unchecked(&x.conjugated_by(e)))
            });
            assert_eq!(bt, ef, "normalizer of {c}");
        }
        let a5 = grp(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let h = grp(5, &["(1 2)(3 4)"]);
        assert_eq!(order_of(5, normalizer_gens(&a5, &h)), 4);
    }

    #[test]
    fn intersection_matches_element_filter() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let c4 = grp(4, &["(1 2 3 4)"]);
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let meet = PermGroup::from_generators(4, intersection_gens(&c4, &v4)).unwrap();
        assert_eq!(meet.order(), 2);
        assert!(meet.contains(&Permutation::parse_cycles("(1 3)(2 4)", 4).unwrap()).unwrap());
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        let bt = order_of(4, intersection_gens(&d8, &a4));
        let ef = filter_order(&s4, |e| d8.contains_unchecked(e) && a4.contains_unchecked(e));
        assert_eq!(bt, ef);
        assert_eq!(bt, 4);
    }

    #[test]
    fn degenerate_quick_paths() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        // Centralizer of the trivial subgroup is everything.
        assert_eq!(order_of(4, centralizer_gens(&s4, &PermGroup::trivial(4))), 24);
        // Normalizer of a normal subgroup is everything.
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(order_of(4, normalizer_gens(&s4, &v4)), 24);
        // Intersection with a contained group.
        assert_eq!(order_of(4, intersection_gens(&s4, &v4)), 4);
    }
}
