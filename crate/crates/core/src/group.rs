//! Finitely generated permutation groups backed by a stabilizer chain.
//!
//! The chain is built deterministically at construction time (no lazy
//! mutation, no randomization), so a `PermGroup` is immutable and freely
//! shareable between threads. Base points are chosen greedily by largest
//! orbit of the sifted residue, with ties broken by smallest point, so the
//! chain is reproducible for a fixed generator list.

use crate::error::{Error, Result};
use crate::limits;
use crate::perm::Permutation;
use std::fmt;
use std::sync::{Arc, OnceLock};

#[derive(Clone, Debug)]
pub(crate) struct ChainLevel {
    pub base: u32,
    /// Strong generators of the stabilizer of all earlier base points.
    pub gens: Vec<Permutation>,
    /// Orbit of `base` under `gens`, in BFS discovery order.
    pub orbit: Vec<u32>,
    /// transversal[p] = u with base^u = p, for p in the orbit.
    pub transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(base: u32, degree: usize) -> ChainLevel {
        let mut transversal = vec![None; degree];
        transversal[base as usize] = Some(Permutation::identity(degree));
        ChainLevel {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base as usize] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            i += 1;
            let up = transversal[p as usize].clone().unwrap();
            for g in &self.gens {
                let q = g.apply(p);
                if transversal[q as usize].is_none() {
                    transversal[q as usize] = Some(up.then(g));
                    orbit.push(q);
                }
            }
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabilizerChain {
    pub degree: usize,
    pub levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    /// Deterministic Schreier–Sims. `base_hint` forces the given points to
    /// be used as the leading base (in order, creating singleton-orbit
    /// levels where necessary); afterwards base points are chosen from the
    /// residues themselves.
    pub fn build(degree: usize, gens: &[Permutation], base_hint: &[u32]) -> StabilizerChain {
        let mut chain = StabilizerChain {
            degree,
            levels: base_hint.iter().map(|&b| ChainLevel::new(b, degree)).collect(),
        };
        for g in gens {
            chain.insert(g.clone(), 0);
        }
        chain
    }

    /// Sift g through levels starting at `from`; returns the residue and
    /// the level at which sifting stopped (residue image not in orbit, or
    /// `levels.len()` when fully stripped).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let p = g.apply(level.base);
            match &level.transversal[p as usize] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn insert(&mut self, g: Permutation, from: usize) {
        let (residue, mut level) = self.sift_from(g, from);
        if residue.is_identity() {
            return;
        }
        if level == self.levels.len() {
            // New base point: the point on the residue's longest cycle,
            // smallest such point on ties.
            let base = Self::pick_base(&residue);
            self.levels.push(ChainLevel::new(base, self.degree));
            level = self.levels.len() - 1;
        }
        self.levels[level].gens.push(residue);
        self.levels[level].recompute_orbit(self.degree);
        // Close under Schreier generators at this level.
        let orbit = self.levels[level].orbit.clone();
        for p in orbit {
            let up = self.levels[level].transversal[p as usize].clone().unwrap();
            for gi in 0..self.levels[level].gens.len() {
                let s = self.levels[level].gens[gi].clone();
                let q = s.apply(p);
                let uq = self.levels[level].transversal[q as usize].clone().unwrap();
                let schreier = up.then(&s).then(&uq.inverse());
                self.insert(schreier, level + 1);
            }
        }
    }

    fn pick_base(g: &Permutation) -> u32 {
        let n = g.degree();
        let mut seen = vec![false; n];
        let mut best = (0usize, u32::MAX);
        for start in 0..n as u32 {
            if seen[start as usize] || g.apply(start) == start {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = g.apply(p);
                if p == start {
                    break;
                }
            }
            if len > best.0 {
                best = (len, start);
            }
        }
        best.1
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, level) = self.sift_from(g.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }
}

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabilizerChain,
    order: u64,
    elements: OnceLock<Arc<Vec<Permutation>>>,
    stable_hash: OnceLock<u64>,
}

/// An immutable permutation group. Cloning is cheap (shared internals).
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl PermGroup {
    /// Group generated by `gens` on `degree` points. The identity and
    /// duplicate generators are dropped; the stabilizer chain and order
    /// are computed eagerly.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        if degree > limits::DEGREE_CAP {
            return Err(Error::resource("degree", limits::DEGREE_CAP as u64));
        }
        let mut clean: Vec<Permutation> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
            if !g.is_identity() && !clean.contains(&g) {
                clean.push(g);
            }
        }
        let chain = StabilizerChain::build(degree, &clean, &[]);
        Self::from_parts(degree, clean, chain)
    }

    pub(crate) fn from_parts(
        degree: usize,
        gens: Vec<Permutation>,
        chain: StabilizerChain,
    ) -> Result<PermGroup> {
        let order = chain.order();
        if order > limits::ORDER_CAP as u128 {
            return Err(Error::resource("group order", limits::ORDER_CAP));
        }
        Ok(PermGroup {
            inner: Arc::new(Inner {
                degree,
                gens,
                chain,
                order: order as u64,
                elements: OnceLock::new(),
                stable_hash: OnceLock::new(),
            }),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new()).expect("trivial group within caps")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.gens
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.inner.degree)
    }

    pub(crate) fn chain(&self) -> &StabilizerChain {
        &self.inner.chain
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.inner.degree {
            return Err(Error::InvalidInput(format!(
                "degree mismatch: group on {} points, permutation on {}",
                self.inner.degree,
                g.degree()
            )));
        }
        Ok(self.inner.chain.contains(g))
    }

    /// Fast membership for internal use where degrees are known to match.
    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        self.inner.chain.contains(g)
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators().iter().all(|g| self.contains_unchecked(g))
    }

    /// Set equality (same degree, order and mutual containment).
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.inner.degree == other.inner.degree
            && self.inner.order == other.inner.order
            && self.contains_group(other)
    }

    /// All elements, sorted lexicographically by image table. Memoized.
    /// Guarded by `ELEMENT_ENUM_CAP`.
    pub fn elements(&self) -> Result<Arc<Vec<Permutation>>> {
        if self.inner.order > limits::ELEMENT_ENUM_CAP {
            return Err(Error::resource(
                "element enumeration",
                limits::ELEMENT_ENUM_CAP,
            ));
        }
        Ok(self
            .inner
            .elements
            .get_or_init(|| {
                let mut out = Vec::with_capacity(self.inner.order as usize);
                let mut stack = vec![Permutation::identity(self.inner.degree)];
                self.collect_elements(0, &mut stack, &mut out);
                out.sort_unstable();
                Arc::new(out)
            })
            .clone())
    }

    fn collect_elements(&self, level: usize, stack: &mut Vec<Permutation>, out: &mut Vec<Permutation>) {
        let chain = &self.inner.chain;
        if level == chain.levels.len() {
            out.push(stack.last().unwrap().clone());
            return;
        }
        let suffix = stack.last().unwrap().clone();
        for &p in &chain.levels[level].orbit {
            let u = chain.levels[level].transversal[p as usize].as_ref().unwrap();
            stack.push(u.then(&suffix));
            self.collect_elements(level + 1, stack, out);
            stack.pop();
        }
    }

    /// Deterministic 64-bit hash of the element set (order-independent
    /// combination of per-element FNV hashes plus degree and order).
    /// Used as a memoization and cache key; collisions are guarded by
    /// exact equality checks at every use site.
    pub fn stable_hash(&self) -> Result<u64> {
        if let Some(h) = self.inner.stable_hash.get() {
            return Ok(*h);
        }
        let elements = self.elements()?;
        let mut acc: u64 = 0;
        for e in elements.iter() {
            acc = acc.wrapping_add(e.stable_hash() | 1);
        }
        let h = acc
            .wrapping_mul(0x9e3779b97f4a7c15)
            .rotate_left(17)
            .wrapping_add(self.inner.order)
            .wrapping_add((self.inner.degree as u64) << 32);
        let _ = self.inner.stable_hash.set(h);
        Ok(h)
    }

    /// A deterministic element of order divisible by no prime but p,
    /// i.e. a nontrivial p-element, if one exists. Scans elements in
    /// chain order, powering up the first element of order divisible by p.
    pub fn find_p_element(&self, p: u64) -> Result<Option<Permutation>> {
        if self.inner.order % p != 0 {
            return Ok(None);
        }
        // By Cauchy's theorem an element of order divisible by p exists.
        let elements = self.elements()?;
        for e in elements.iter() {
            let o = e.order();
            if o % p == 0 {
                let mut q = o;
                while q % p == 0 {
                    q /= p;
                }
                let x = e.pow(q);
                debug_assert!(!x.is_identity());
                return Ok(Some(x));
            }
        }
        Err(Error::Internal("no p-element found despite p | |G|".into()))
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other)
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens [{}])",
            self.inner.degree,
            self.inner.order,
            self.inner
                .gens
                .iter()
                .map(|g| g.cycle_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Chain with a prescribed leading base, used by backtrack searches and
/// pointwise stabilizers. Exposed crate-internally.
pub(crate) fn chain_with_base(group: &PermGroup, base_hint: &[u32]) -> StabilizerChain {
    StabilizerChain::build(group.degree(), group.generators(), base_hint)
}

/// Subgroup of `group` fixing every point in `points`, computed from a
/// prescribed-base stabilizer chain (no element enumeration).
pub fn pointwise_stabilizer(group: &PermGroup, points: &[u32]) -> Result<PermGroup> {
    let chain = chain_with_base(group, points);
    let mut gens: Vec<Permutation> = Vec::new();
    for level in chain.levels.iter().skip(points.len()) {
        gens.extend(level.gens.iter().cloned());
    }
    // Levels inside the hinted prefix contribute nothing: their strong
    // generators may move hint points, but generators of deeper levels fix
    // all of them by construction.
    PermGroup::from_generators(group.degree(), gens)
}

/// Incrementally track a coset prefix in another group's chain: feed the
/// required images of the chain's leading base points one at a time and
/// learn as soon as no element of the group can match them.
#[derive(Clone)]
pub(crate) struct PrefixSifter<'a> {
    chain: &'a StabilizerChain,
    level: usize,
    adjust: Permutation,
    dead: bool,
}

impl<'a> PrefixSifter<'a> {
    pub fn new(chain: &'a StabilizerChain) -> PrefixSifter<'a> {
        PrefixSifter {
            chain,
            level: 0,
            adjust: Permutation::identity(chain.degree),
            dead: false,
        }
    }

    /// Require the element to map the current level's base point to `y`
    /// (in the original action). Returns false if that is impossible.
    pub fn feed(&mut self, y: u32) -> bool {
        if self.dead {
            return false;
        }
        debug_assert!(self.level < self.chain.levels.len());
        let level = &self.chain.levels[self.level];
        let q = self.adjust.apply(y);
        match &level.transversal[q as usize] {
            Some(u) => {
                self.adjust = self.adjust.then(&u.inverse());
                self.level += 1;
                true
            }
            None => {
                self.dead = true;
                false
            }
        }
    }
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

    #[test]
    fn empty_generating_set_gives_trivial_group() {
        let g = PermGroup::trivial(4);
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn orders_of_standard_groups() {
        assert_eq!(grp(4, &["(1 2 3 4)", "(1 2)"]).order(), 24);
        assert_eq!(grp(4, &["(1 2)(3 4)"]).order(), 2);
        assert_eq!(grp(5, &["(1 2 3 4 5)", "(1 2 3)"]).order(), 60);
        assert_eq!(grp(3, &["(1 2 3)"]).order(), 3);
        assert_eq!(grp(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]).order(), 21);
        assert_eq!(grp(8, &["(1 2 3 4 5 6 7 8)", "(2 4)(3 7)(6 8)"]).order(), 16);
    }

    #[test]
    fn membership_by_sifting() {
        let c3 = grp(3, &["(1 2 3)"]);
        assert!(!c3.contains(&Permutation::parse_cycles("(1 3)", 3).unwrap()).unwrap());
        assert!(c3.contains(&Permutation::parse_cycles("(1 3 2)", 3).unwrap()).unwrap());
        assert!(c3.contains(&Permutation::identity(3)).unwrap());
        assert!(c3.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn element_enumeration_matches_order() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let elements = s4.elements().unwrap();
        assert_eq!(elements.len(), 24);
        let mut sorted = elements.as_ref().clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
        for e in elements.iter() {
            assert!(s4.contains(e).unwrap());
        }
    }

    #[test]
    fn pointwise_stabilizer_of_prefix() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let stab = pointwise_stabilizer(&s4, &[0]).unwrap();
        assert_eq!(stab.order(), 6);
        let stab2 = pointwise_stabilizer(&s4, &[0, 1]).unwrap();
        assert_eq!(stab2.order(), 2);
    }

    #[test]
    fn stable_hash_ignores_generating_set() {
        let a = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let b = grp(4, &["(1 2)", "(2 3)", "(3 4)"]);
        assert!(a.same_group(&b));
        assert_eq!(a.stable_hash().unwrap(), b.stable_hash().unwrap());
    }

    #[test]
    fn p_element_search() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let x = s4.find_p_element(3).unwrap().unwrap();
        assert_eq!(x.order(), 3);
        let y = s4.find_p_element(2).unwrap().unwrap();
        assert!(y.order() == 2 || y.order() == 4);
        assert!(s4.find_p_element(5).unwrap().is_none());
    }
}
