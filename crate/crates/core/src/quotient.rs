//! Quotient groups via the right-coset action.
//!
//! For N normal in G the action of G on the right cosets of N is faithful
//! for G/N and regular on |G : N| points. Coset equality is decided by
//! membership sifting in N, never by enumerating N.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits;
use crate::perm::Permutation;
use crate::subgroup::SubgroupHandle;
use std::collections::HashMap;

pub struct QuotientRep {
    source: PermGroup,
    kernel: PermGroup,
    image: PermGroup,
    /// Right-coset representatives in BFS discovery order; reps[0] = id.
    reps: Vec<Permutation>,
    /// Exact-match lookup, usable only when the kernel is trivial.
    exact: Option<HashMap<Permutation, usize>>,
}

impl QuotientRep {
    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    /// The quotient as a permutation group on |G : N| points.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    fn coset_of(&self, x: &Permutation) -> usize {
        if let Some(exact) = &self.exact {
            return *exact.get(x).expect("element of G has a coset");
        }
        for (j, r) in self.reps.iter().enumerate() {
            if self.kernel.contains_unchecked(&x.then(&r.inverse())) {
                return j;
            }
        }
        panic!("element of G not covered by coset representatives");
    }

    /// The permutation induced on cosets by g. A homomorphism with kernel N.
    pub fn project(&self, g: &Permutation) -> Result<Permutation> {
        if !self.source.contains_unchecked(g) {
            return Err(Error::Precondition(
                "project applied to an element outside the source group".into(),
            ));
        }
        let images: Vec<u32> = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.then(g)) as u32)
            .collect();
        Ok(Permutation::new(images).expect("coset action is a permutation"))
    }

    /// A preimage in G of an image element (the coset action is regular,
    /// so the representative of the image of coset 0 lifts it).
    pub fn lift(&self, h: &Permutation) -> Result<Permutation> {
        if !self.image.contains_unchecked(h) {
            return Err(Error::Precondition(
                "lift applied to an element outside the image group".into(),
            ));
        }
        Ok(self.reps[h.apply(0) as usize].clone())
    }

    /// Image of a subgroup of G under the projection.
    pub fn project_group(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens: Vec<Permutation> = h
            .generators()
            .iter()
            .map(|g| self.project(g))
            .collect::<Result<_>>()?;
        PermGroup::from_generators(self.index(), gens)
    }

    /// Full preimage in G of a subgroup of the image: generated by the
    /// kernel and lifts of the subgroup's generators.
    pub fn lift_group(&self, h: &PermGroup) -> Result<PermGroup> {
        let mut gens = self.kernel.generators().to_vec();
        for g in h.generators() {
            gens.push(self.lift(g)?);
        }
        PermGroup::from_generators(self.source.degree(), gens)
    }
}

/// The coset action of G on the right cosets of a normal subgroup N.
pub fn coset_action(group: &PermGroup, n: &SubgroupHandle) -> Result<QuotientRep> {
    if !n.parent().same_group(group) {
        return Err(Error::Precondition(
            "coset_action requires N given inside G".into(),
        ));
    }
    if !n.is_normal() {
        return Err(Error::Precondition("coset_action requires N normal in G".into()));
    }
    let kernel = n.group().clone();
    let index = group.order() / kernel.order();
    if index > limits::COSET_INDEX_CAP {
        return Err(Error::resource("coset index", limits::COSET_INDEX_CAP));
    }
    let trivial_kernel = kernel.is_trivial();
    let mut reps: Vec<Permutation> = vec![group.identity()];
    let mut exact: Option<HashMap<Permutation, usize>> = if trivial_kernel {
        let mut m = HashMap::new();
        m.insert(group.identity(), 0usize);
        Some(m)
    } else {
        None
    };
    let coset_of = |reps: &Vec<Permutation>,
                    exact: &Option<HashMap<Permutation, usize>>,
                    x: &Permutation|
     -> Option<usize> {
        if let Some(map) = exact {
            return map.get(x).copied();
        }
        reps.iter()
            .position(|r| kernel.contains_unchecked(&x.then(&r.inverse())))
    };
    let mut frontier = 0usize;
    while frontier < reps.len() {
        let r = reps[frontier].clone();
        frontier += 1;
        for g in group.generators() {
            let x = r.then(g);
            if coset_of(&reps, &exact, &x).is_none() {
                if let Some(map) = &mut exact {
                    map.insert(x.clone(), reps.len());
                }
                reps.push(x);
            }
        }
    }
    if reps.len() as u64 != index {
        return Err(Error::Internal(format!(
            "coset enumeration found {} cosets, expected {index}",
            reps.len()
        )));
    }
    let rep = QuotientRep {
        source: group.clone(),
        kernel,
        image: PermGroup::trivial(reps.len().max(1)),
        reps,
        exact,
    };
    let gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<u32> = rep
                .reps
                .iter()
                .map(|r| rep.coset_of(&r.then(g)) as u32)
                .collect();
            Permutation::new(images).expect("coset action is a permutation")
        })
        .collect();
    let image = PermGroup::from_generators(rep.reps.len(), gens)?;
    if image.order() * rep.kernel.order() != group.order() {
        return Err(Error::Internal(format!(
            "|G/N| * |N| = {} * {} != |G| = {}",
            image.order(),
            rep.kernel.order(),
            group.order()
        )));
    }
    Ok(QuotientRep { image, ..rep })
}
