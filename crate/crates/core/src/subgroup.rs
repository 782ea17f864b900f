//! Structural subgroup operators: closures, centralizers, normalizers,
//! intersections, normal products, commutators, Sylow subgroups, cores,
//! Fitting and Frattini subgroups, and brute-force subgroup enumeration.

use crate::arith;
use crate::backtrack;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits;
use crate::perm::Permutation;
use std::collections::HashMap;

/// A subgroup together with its ambient group. Both share the same degree
/// and every generator of `group` lies in `parent`.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    parent: PermGroup,
    group: PermGroup,
}

impl SubgroupHandle {
    pub fn new(parent: PermGroup, group: PermGroup) -> Result<SubgroupHandle> {
        if parent.degree() != group.degree() {
            return Err(Error::Precondition(
                "subgroup and parent act on different point sets".into(),
            ));
        }
        if !parent.contains_group(&group) {
            return Err(Error::Precondition(
                "generators do not lie in the ambient group".into(),
            ));
        }
        Ok(SubgroupHandle { parent, group })
    }

    pub(crate) fn new_unchecked(parent: PermGroup, group: PermGroup) -> SubgroupHandle {
        debug_assert!(parent.contains_group(&group));
        SubgroupHandle { parent, group }
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn index(&self) -> u64 {
        self.parent.order() / self.group.order()
    }

    fn wrap(&self, gens: Vec<Permutation>) -> SubgroupHandle {
        let group = PermGroup::from_generators(self.parent.degree(), gens)
            .expect("derived subgroup stays within caps");
        SubgroupHandle::new_unchecked(self.parent.clone(), group)
    }

    /// True iff the subgroup is normalized by every generator of the parent.
    pub fn is_normal(&self) -> bool {
        self.group.generators().iter().all(|x| {
            self.parent
                .generators()
                .iter()
                .all(|g| self.group.contains_unchecked(&x.conjugated_by(g)))
        })
    }

    /// Smallest normal subgroup of the parent containing this subgroup:
    /// the fixpoint of conjugating generators by the parent's generators.
    pub fn normal_closure(&self) -> SubgroupHandle {
        let mut gens: Vec<Permutation> = self.group.generators().to_vec();
        let mut k = self.group.clone();
        loop {
            let mut grew = false;
            let current = gens.clone();
            for x in &current {
                for g in self.parent.generators() {
                    let c = x.conjugated_by(g);
                    if !k.contains_unchecked(&c) {
                        gens.push(c);
                        k = PermGroup::from_generators(self.parent.degree(), gens.clone())
                            .expect("normal closure stays within caps");
                        grew = true;
                    }
                }
            }
            if !grew {
                return SubgroupHandle::new_unchecked(self.parent.clone(), k);
            }
        }
    }

    /// {g in parent : gh = hg for all h in this subgroup}.
    pub fn centralizer(&self) -> SubgroupHandle {
        self.wrap(backtrack::centralizer_gens(&self.parent, &self.group))
    }

    /// {g in parent : H^g = H}. Always contains the subgroup itself.
    pub fn normalizer(&self) -> SubgroupHandle {
        let mut gens = backtrack::normalizer_gens(&self.parent, &self.group);
        gens.extend(self.group.generators().iter().cloned());
        self.wrap(gens)
    }

    pub fn intersection(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        if !self.parent.same_group(&other.parent) {
            return Err(Error::Precondition(
                "intersection requires the same ambient group".into(),
            ));
        }
        Ok(self.wrap(backtrack::intersection_gens(&self.group, &other.group)))
    }

    /// HN for N normal in the common parent, with the order identity
    /// |HN| |H ∩ N| = |H| |N| asserted.
    pub fn product_with_normal(&self, n: &SubgroupHandle) -> Result<SubgroupHandle> {
        if !self.parent.same_group(&n.parent) {
            return Err(Error::Precondition(
                "product requires the same ambient group".into(),
            ));
        }
        if !n.is_normal() {
            return Err(Error::Precondition(
                "product_with_normal requires a normal factor".into(),
            ));
        }
        let mut gens = self.group.generators().to_vec();
        gens.extend(n.group.generators().iter().cloned());
        let product = self.wrap(gens);
        let meet = self.intersection(n)?;
        if product.order() * meet.order() != self.order() * n.order() {
            return Err(Error::Internal(format!(
                "|HN| |H∩N| = {} * {} != |H| |N| = {} * {}",
                product.order(),
                meet.order(),
                self.order(),
                n.order()
            )));
        }
        Ok(product)
    }
}

pub fn full_handle(group: &PermGroup) -> SubgroupHandle {
    SubgroupHandle::new_unchecked(group.clone(), group.clone())
}

pub fn trivial_handle(group: &PermGroup) -> SubgroupHandle {
    SubgroupHandle::new_unchecked(group.clone(), PermGroup::trivial(group.degree()))
}

pub fn center(group: &PermGroup) -> SubgroupHandle {
    full_handle(group).centralizer()
}

/// [A, B]: the normal closure in ⟨A, B⟩ of the generator commutators.
pub fn commutator(group: &PermGroup, a: &SubgroupHandle, b: &SubgroupHandle) -> SubgroupHandle {
    debug_assert!(group.contains_group(a.group()) && group.contains_group(b.group()));
    let mut ambient_gens = a.group().generators().to_vec();
    ambient_gens.extend(b.group().generators().iter().cloned());
    let ambient = PermGroup::from_generators(group.degree(), ambient_gens)
        .expect("join of subgroups stays within caps");
    let comms: Vec<Permutation> = a
        .group()
        .generators()
        .iter()
        .flat_map(|x| b.group().generators().iter().map(move |y| x.commutator(y)))
        .collect();
    let seed = PermGroup::from_generators(group.degree(), comms).expect("within caps");
    let closed = SubgroupHandle::new_unchecked(ambient, seed).normal_closure();
    SubgroupHandle::new_unchecked(group.clone(), closed.group().clone())
}

pub fn derived_subgroup(group: &PermGroup) -> SubgroupHandle {
    let whole = full_handle(group);
    commutator(group, &whole, &whole)
}

/// A Sylow p-subgroup, grown by normalizer ascent from a p-element. Any
/// Sylow p-subgroup is acceptable (they are all conjugate); the search is
/// deterministic. For p not dividing |G| this returns the trivial
/// subgroup (documented, not an error).
pub fn sylow_subgroup(group: &PermGroup, p: u64) -> Result<SubgroupHandle> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let target = arith::p_part(group.order(), p);
    if target == 1 {
        return Ok(trivial_handle(group));
    }
    let x = group
        .find_p_element(p)?
        .ok_or_else(|| Error::Internal("p divides |G| but no p-element found".into()))?;
    let mut current = PermGroup::from_generators(group.degree(), vec![x])?;
    while current.order() < target {
        let normalizer = SubgroupHandle::new_unchecked(group.clone(), current.clone()).normalizer();
        // Find w outside `current` whose order modulo `current` is p; then
        // <current, w> is a p-group of order p * |current|.
        let mut extended = false;
        for z in normalizer.group().elements()?.iter() {
            if current.contains_unchecked(z) {
                continue;
            }
            // Order of z modulo `current`: smallest t >= 1 with z^t inside.
            let mut t = 1u64;
            let mut acc = z.clone();
            while !current.contains_unchecked(&acc) {
                t += 1;
                acc = acc.then(z);
            }
            if t % p == 0 {
                let w = z.pow(t / p);
                debug_assert!(!current.contains_unchecked(&w));
                let mut gens = current.generators().to_vec();
                gens.push(w);
                current = PermGroup::from_generators(group.degree(), gens)?;
                extended = true;
                break;
            }
        }
        if !extended {
            return Err(Error::Internal(
                "normalizer of a non-Sylow p-subgroup did not extend it".into(),
            ));
        }
    }
    Ok(SubgroupHandle::new_unchecked(group.clone(), current))
}

/// O_p(G): the normal core of a Sylow p-subgroup, computed as the fixpoint
/// of intersecting with generator conjugates.
pub fn p_core(group: &PermGroup, p: u64) -> Result<SubgroupHandle> {
    let sylow = sylow_subgroup(group, p)?;
    let mut core = sylow;
    loop {
        let mut next = core.clone();
        for g in group.generators() {
            let conj_gens: Vec<Permutation> = next
                .group()
                .generators()
                .iter()
                .map(|x| x.conjugated_by(g))
                .collect();
            let conj = PermGroup::from_generators(group.degree(), conj_gens)?;
            let conj_handle = SubgroupHandle::new_unchecked(group.clone(), conj);
            next = next.intersection(&conj_handle)?;
        }
        if next.order() == core.order() {
            debug_assert!(next.is_normal());
            return Ok(next);
        }
        core = next;
    }
}

/// F(G): the product of the p-cores over the primes dividing |G|.
pub fn fitting(group: &PermGroup) -> Result<SubgroupHandle> {
    let mut gens: Vec<Permutation> = Vec::new();
    for p in arith::prime_divisors(group.order()) {
        gens.extend(p_core(group, p)?.group().generators().iter().cloned());
    }
    let fit = PermGroup::from_generators(group.degree(), gens)?;
    Ok(SubgroupHandle::new_unchecked(group.clone(), fit))
}

/// Every subgroup of `group`, by closing the subgroup set under
/// single-element extension. Deduplicated by stable hash with exact
/// equality confirmation; returned in a canonical deterministic order
/// (by order, then by sorted element list).
pub fn all_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    all_subgroups_bounded(group, limits::SUBGROUP_ENUM_ORDER_CAP)
}

pub fn all_subgroups_bounded(group: &PermGroup, cap: u64) -> Result<Vec<PermGroup>> {
    if group.order() > cap {
        return Err(Error::resource("subgroup enumeration order", cap));
    }
    let elements = group.elements()?;
    let mut subs: Vec<PermGroup> = vec![PermGroup::trivial(group.degree())];
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    seen.entry(subs[0].stable_hash()?).or_default().push(0);
    let mut frontier = 0usize;
    while frontier < subs.len() {
        let h = subs[frontier].clone();
        frontier += 1;
        if h.order() == group.order() {
            continue;
        }
        for x in elements.iter() {
            if h.contains_unchecked(x) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(x.clone());
            let k = PermGroup::from_generators(group.degree(), gens)?;
            let key = k.stable_hash()?;
            let bucket = seen.entry(key).or_default();
            if bucket.iter().any(|&i| subs[i].same_group(&k)) {
                continue;
            }
            bucket.push(subs.len());
            subs.push(k);
        }
    }
    subs.sort_by_cached_key(|s| {
        let elems = s.elements().expect("bounded by enumeration cap");
        (s.order(), elems.as_ref().clone())
    });
    Ok(subs)
}

/// Inclusion-maximal proper subgroups, from the full enumeration.
pub fn maximal_subgroups(group: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let subs = all_subgroups(group)?;
    let proper: Vec<&PermGroup> = subs.iter().filter(|s| s.order() < group.order()).collect();
    let mut maximal = Vec::new();
    for (i, m) in proper.iter().enumerate() {
        let dominated = proper.iter().enumerate().any(|(j, h)| {
            j != i && h.order() > m.order() && h.contains_group(m)
        });
        if !dominated {
            maximal.push(SubgroupHandle::new_unchecked(group.clone(), (*m).clone()));
        }
    }
    Ok(maximal)
}

/// Φ(G): intersection of all maximal subgroups (the whole group when
/// there are none, i.e. for the trivial group).
pub fn frattini(group: &PermGroup) -> Result<SubgroupHandle> {
    let maximal = maximal_subgroups(group)?;
    let mut iter = maximal.into_iter();
    let mut acc = match iter.next() {
        Some(m) => m,
        None => return Ok(full_handle(group)),
    };
    for m in iter {
        acc = acc.intersection(&m)?;
    }
    Ok(acc)
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

    fn s4() -> PermGroup {
        grp(4, &["(1 2 3 4)", "(1 2)"])
    }

    fn sub(parent: &PermGroup, gens: &[&str]) -> SubgroupHandle {
        SubgroupHandle::new(parent.clone(), grp(parent.degree(), gens)).unwrap()
    }

    #[test]
    fn normal_closures_in_s4() {
        let g = s4();
        assert_eq!(sub(&g, &["(1 2)"]).normal_closure().order(), 24);
        assert_eq!(sub(&g, &["(1 2)(3 4)"]).normal_closure().order(), 4);
        let v4 = sub(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(v4.normal_closure().group().same_group(v4.group()));
    }

    #[test]
    fn normality_checks() {
        let g = s4();
        assert!(sub(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]).is_normal());
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        assert!(!SubgroupHandle::new(s3.clone(), grp(3, &["(1 2)"])).unwrap().is_normal());
        assert!(center(&g).is_normal());
    }

    #[test]
    fn centers_and_centralizers() {
        let g = s4();
        assert_eq!(center(&g).order(), 1);
        assert_eq!(trivial_handle(&g).centralizer().order(), 24);
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        assert_eq!(center(&s3).order(), 1);
        // Q8 in its regular representation.
        let q8 = crate::corpus::construct_named("Q8", &[]).unwrap();
        assert_eq!(center(&q8).order(), 2);
    }

    #[test]
    fn normalizers() {
        let g = s4();
        assert_eq!(sub(&g, &["(1 3)(2 4)"]).normalizer().order(), 8);
        let a5 = grp(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(
            SubgroupHandle::new(a5.clone(), grp(5, &["(1 2)(3 4)"]))
                .unwrap()
                .normalizer()
                .order(),
            4
        );
        let v4 = sub(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(v4.normalizer().order(), 24);
    }

    #[test]
    fn intersections() {
        let g = s4();
        let c4 = sub(&g, &["(1 2 3 4)"]);
        let v4 = sub(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let meet = c4.intersection(&v4).unwrap();
        assert_eq!(meet.order(), 2);
        assert!(meet
            .group()
            .contains(&Permutation::parse_cycles("(1 3)(2 4)", 4).unwrap())
            .unwrap());
        assert!(c4.intersection(&c4).unwrap().group().same_group(c4.group()));
        // Two distinct order-3 subgroups of A4 meet trivially.
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        let x = SubgroupHandle::new(a4.clone(), grp(4, &["(1 2 3)"])).unwrap();
        let y = SubgroupHandle::new(a4.clone(), grp(4, &["(2 3 4)"])).unwrap();
        assert_eq!(x.intersection(&y).unwrap().order(), 1);
    }

    #[test]
    fn normal_products() {
        let g = s4();
        let h = sub(&g, &["(1 2)"]);
        let v4 = sub(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(h.product_with_normal(&v4).unwrap().order(), 8);
        assert_eq!(h.product_with_normal(&trivial_handle(&g)).unwrap().order(), 2);
        let inside = sub(&g, &["(1 2)(3 4)"]);
        assert_eq!(inside.product_with_normal(&v4).unwrap().order(), 4);
        // Non-normal second factor is a precondition error.
        assert!(v4.product_with_normal(&h).is_err());
    }

    #[test]
    fn derived_subgroups() {
        let g = s4();
        let d = derived_subgroup(&g);
        assert_eq!(d.order(), 12);
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        assert!(d.group().same_group(&a4));
        let abelian = grp(5, &["(1 2 3 4 5)"]);
        assert_eq!(derived_subgroup(&abelian).order(), 1);
        let q8 = crate::corpus::construct_named("Q8", &[]).unwrap();
        let dq = derived_subgroup(&q8);
        assert_eq!(dq.order(), 2);
        assert!(dq.group().same_group(center(&q8).group()));
    }

    #[test]
    fn sylow_subgroups() {
        let g = s4();
        assert_eq!(sylow_subgroup(&g, 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&g, 3).unwrap().order(), 3);
        assert_eq!(sylow_subgroup(&g, 5).unwrap().order(), 1);
        let a5 = grp(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(sylow_subgroup(&a5, 5).unwrap().order(), 5);
        assert_eq!(sylow_subgroup(&a5, 2).unwrap().order(), 4);
        let c6 = grp(6, &["(1 2 3 4 5 6)"]);
        let syl2 = sylow_subgroup(&c6, 2).unwrap();
        assert_eq!(syl2.order(), 2);
        assert!(sylow_subgroup(&g, 4).is_err());
    }

    #[test]
    fn cores_and_fitting() {
        let g = s4();
        let o2 = p_core(&g, 2).unwrap();
        assert_eq!(o2.order(), 4);
        assert!(o2.is_normal());
        assert_eq!(p_core(&g, 3).unwrap().order(), 1);
        let fit = fitting(&g).unwrap();
        assert_eq!(fit.order(), 4);
        let abelian = grp(6, &["(1 2 3 4 5 6)"]);
        assert_eq!(fitting(&abelian).unwrap().order(), 6);
    }

    #[test]
    fn subgroup_enumeration_counts() {
        // Known subgroup counts: C12 has 6, S3 has 6, S4 has 30, A5 has 59.
        let c12 = grp(12, &["(1 2 3 4 5 6 7 8 9 10 11 12)"]);
        assert_eq!(all_subgroups(&c12).unwrap().len(), 6);
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        assert_eq!(all_subgroups(&s3).unwrap().len(), 6);
        assert_eq!(all_subgroups(&s4()).unwrap().len(), 30);
        let a5 = grp(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(all_subgroups(&a5).unwrap().len(), 59);
    }

    #[test]
    fn maximal_subgroups_and_frattini() {
        let c4 = grp(4, &["(1 2 3 4)"]);
        assert_eq!(frattini(&c4).unwrap().order(), 2);
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(frattini(&a4).unwrap().order(), 1);
        let c5 = grp(5, &["(1 2 3 4 5)"]);
        assert_eq!(frattini(&c5).unwrap().order(), 1);
        let maximal = maximal_subgroups(&s4()).unwrap();
        // S4 has 8 maximal subgroups: 4 copies of S3, 3 of D8, 1 of A4.
        assert_eq!(maximal.len(), 8);
        assert!(maximal.iter().all(|m| m.order() == 6 || m.order() == 8 || m.order() == 12));
    }

    #[test]
    fn subgroup_enumeration_respects_bound() {
        let s6 = grp(6, &["(1 2 3 4 5 6)", "(1 2)"]);
        assert!(matches!(
            maximal_subgroups(&s6),
            Err(Error::Resource { .. })
        ));
    }
}
