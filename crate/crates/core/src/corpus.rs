//! Group constructors for standard families, and ingestion of JSON group
//! specs (cycle-notation strings or 1-based image arrays).

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};

/// A hand-writable description of a permutation group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u64>,
}

/// One generator: either cycle notation ("(1 2 3)(4 5)") or a 1-based
/// image array ([2, 3, 1] sends 1 to 2, 2 to 3, 3 to 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Cycles(String),
    Images(Vec<u32>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup> {
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(match g {
                GeneratorSpec::Cycles(s) => Permutation::parse_cycles(s, self.degree)?,
                GeneratorSpec::Images(images) => {
                    if images.len() != self.degree {
                        return Err(Error::Ingestion(format!(
                            "group {:?}: image array of length {} but degree {}",
                            self.name,
                            images.len(),
                            self.degree
                        )));
                    }
                    for &x in images {
                        if x == 0 || x as usize > self.degree {
                            return Err(Error::Ingestion(format!(
                                "group {:?}: image {x} out of range 1..={}",
                                self.name, self.degree
                            )));
                        }
                    }
                    Permutation::new(images.iter().map(|&x| x - 1).collect())?
                }
            });
        }
        let group = PermGroup::from_generators(self.degree, gens)?;
        if let Some(expected) = self.expected_order {
            if group.order() != expected {
                return Err(Error::Ingestion(format!(
                    "group {:?}: constructed order {} but expected {expected}",
                    self.name,
                    group.order()
                )));
            }
        }
        Ok(group)
    }

    /// Canonical spec for a group: generators printed in cycle notation,
    /// expected order recorded.
    pub fn from_group(name: &str, group: &PermGroup) -> GroupSpec {
        GroupSpec {
            name: name.to_string(),
            degree: group.degree(),
            generators: group
                .generators()
                .iter()
                .map(|g| GeneratorSpec::Cycles(g.cycle_string()))
                .collect(),
            expected_order: Some(group.order()),
        }
    }
}

/// Parse one JSON group spec document.
pub fn parse_spec(text: &str) -> Result<(GroupSpec, PermGroup)> {
    let spec: GroupSpec = serde_json::from_str(text)?;
    let group = spec.build()?;
    Ok((spec, group))
}

/// Parse a corpus file: a JSON array of group specs.
pub fn parse_corpus(text: &str) -> Result<Vec<(GroupSpec, PermGroup)>> {
    let specs: Vec<GroupSpec> = serde_json::from_str(text)?;
    specs
        .into_iter()
        .map(|s| {
            let g = s.build()?;
            Ok((s, g))
        })
        .collect()
}

fn cycles(degree: usize, strs: &[&str]) -> Result<PermGroup> {
    let gens = strs
        .iter()
        .map(|s| Permutation::parse_cycles(s, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(degree, gens)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    PermGroup::from_generators(n, vec![Permutation::new(images)?])
}

/// Direct product of cyclic groups of the given orders (1s are dropped).
pub fn abelian(invariants: &[u64]) -> Result<PermGroup> {
    let mut acc = PermGroup::trivial(1);
    let mut first = true;
    for &n in invariants {
        if n <= 1 {
            continue;
        }
        let c = cyclic(n as usize)?;
        acc = if first { c } else { direct_product(&acc, &c)? };
        first = false;
    }
    Ok(acc)
}

pub fn elementary_abelian(p: u64, k: u32) -> Result<PermGroup> {
    abelian(&vec![p; k as usize])
}

/// Dihedral group of the given order (order = 2n, acting on n points).
pub fn dihedral(order: u64) -> Result<PermGroup> {
    if order < 4 || order % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "dihedral order must be an even number >= 4, got {order}"
        )));
    }
    let n = (order / 2) as usize;
    if n == 2 {
        // D4 = C2 x C2 needs 4 points to be faithful.
        return abelian(&[2, 2]);
    }
    let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let flip: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    PermGroup::from_generators(n, vec![Permutation::new(rot)?, Permutation::new(flip)?])
}

/// Generalized quaternion group of order 2^k (k >= 3), in its regular
/// representation: a of order 2^(k-1), b^2 = a^(2^(k-2)), a^b = a^{-1}.
pub fn generalized_quaternion(order: u64) -> Result<PermGroup> {
    if order < 8 || order.count_ones() != 1 {
        return Err(Error::InvalidInput(format!(
            "generalized quaternion order must be a power of two >= 8, got {order}"
        )));
    }
    let n = (order / 2) as u32; // order of a
    let half = n / 2;
    let idx = |i: u32, e: u32| -> u32 { e * n + i };
    // Right multiplication by a: (i,0) -> (i+1,0); (i,1) -> (i-1,1).
    let mut a = vec![0u32; order as usize];
    let mut b = vec![0u32; order as usize];
    for i in 0..n {
        a[idx(i, 0) as usize] = idx((i + 1) % n, 0);
        a[idx(i, 1) as usize] = idx((i + n - 1) % n, 1);
        // Right multiplication by b: (i,0) -> (i,1); (i,1) -> (i + n/2, 0).
        b[idx(i, 0) as usize] = idx(i, 1);
        b[idx(i, 1) as usize] = idx((i + half) % n, 0);
    }
    PermGroup::from_generators(
        order as usize,
        vec![Permutation::new(a)?, Permutation::new(b)?],
    )
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n <= 1 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let mut gens = vec![Permutation::parse_cycles("(1 2)", n)?];
    if n >= 3 {
        let long: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        gens.push(Permutation::new(long)?);
    }
    PermGroup::from_generators(n, gens)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n <= 2 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    if n == 3 {
        return cycles(3, &["(1 2 3)"]);
    }
    let three = Permutation::parse_cycles("(1 2 3)", n)?;
    let long = if n % 2 == 1 {
        // n odd: the n-cycle is even.
        let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Permutation::new(images)?
    } else {
        // n even: use the (n-1)-cycle on points 2..n.
        let mut images: Vec<u32> = (0..n as u32).collect();
        for i in 1..n as u32 {
            images[i as usize] = if i == n as u32 - 1 { 1 } else { i + 1 };
        }
        Permutation::new(images)?
    };
    PermGroup::from_generators(n, vec![three, long])
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for i in 0..a.degree() as u32 {
            images[i as usize] = g.apply(i);
        }
        gens.push(Permutation::new(images)?);
    }
    let shift = a.degree() as u32;
    for g in b.generators() {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for i in 0..b.degree() as u32 {
            images[(shift + i) as usize] = shift + g.apply(i);
        }
        gens.push(Permutation::new(images)?);
    }
    PermGroup::from_generators(degree, gens)
}

/// SL(2, p) acting on the p^2 - 1 nonzero vectors of F_p^2.
pub fn special_linear_2(p: u64) -> Result<PermGroup> {
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("SL(2,{p}) needs a prime")));
    }
    let n = (p * p - 1) as usize;
    let idx = |x: u64, y: u64| -> u32 { (x * p + y - 1) as u32 };
    let act = |m: [[u64; 2]; 2]| -> Result<Permutation> {
        let mut images = vec![0u32; n];
        for x in 0..p {
            for y in 0..p {
                if x == 0 && y == 0 {
                    continue;
                }
                let nx = (x * m[0][0] + y * m[1][0]) % p;
                let ny = (x * m[0][1] + y * m[1][1]) % p;
                images[idx(x, y) as usize] = idx(nx, ny);
            }
        }
        Permutation::new(images)
    };
    PermGroup::from_generators(n, vec![act([[1, 1], [0, 1]])?, act([[1, 0], [1, 1]])?])
}

/// PSL(2, 7) on the projective line over F_7 (8 points; point 8 is
/// infinity), generated by z -> z+1 and z -> -1/z.
pub fn psl_2_7() -> Result<PermGroup> {
    cycles(8, &["(1 2 3 4 5 6 7)", "(1 8)(2 7)(3 4)(5 6)"])
}

/// Standard families and the small named library.
///
/// Families: cyclic(n), abelian(n1, n2, ...), elementary_abelian(p, k),
/// dihedral(order), generalized_quaternion(order), symmetric(n),
/// alternating(n). Library names (no params): Q8, D8, SL(2,3), SL(2,5),
/// A5, S5, PSL(2,7).
pub fn construct_named(family: &str, params: &[u64]) -> Result<PermGroup> {
    let arity = |k: usize| -> Result<()> {
        if params.len() != k {
            Err(Error::InvalidInput(format!(
                "{family} expects {k} parameter(s), got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    match family {
        "cyclic" => {
            arity(1)?;
            cyclic(params[0] as usize)
        }
        "abelian" => {
            if params.is_empty() {
                return Err(Error::InvalidInput("abelian expects invariants".into()));
            }
            abelian(params)
        }
        "elementary_abelian" => {
            arity(2)?;
            elementary_abelian(params[0], params[1] as u32)
        }
        "dihedral" => {
            arity(1)?;
            dihedral(params[0])
        }
        "generalized_quaternion" => {
            arity(1)?;
            generalized_quaternion(params[0])
        }
        "symmetric" => {
            arity(1)?;
            symmetric(params[0] as usize)
        }
        "alternating" => {
            arity(1)?;
            alternating(params[0] as usize)
        }
        "Q8" => {
            arity(0)?;
            generalized_quaternion(8)
        }
        "D8" => {
            arity(0)?;
            dihedral(8)
        }
        "SL(2,3)" => {
            arity(0)?;
            special_linear_2(3)
        }
        "SL(2,5)" => {
            arity(0)?;
            special_linear_2(5)
        }
        "A5" => {
            arity(0)?;
            alternating(5)
        }
        "S5" => {
            arity(0)?;
            symmetric(5)
        }
        "PSL(2,7)" => {
            arity(0)?;
            psl_2_7()
        }
        other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(5).unwrap().order(), 5);
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(abelian(&[2, 4]).unwrap().order(), 8);
        assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
        assert_eq!(dihedral(8).unwrap().order(), 8);
        assert_eq!(dihedral(4).unwrap().order(), 4);
        assert_eq!(generalized_quaternion(8).unwrap().order(), 8);
        assert_eq!(generalized_quaternion(16).unwrap().order(), 16);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(special_linear_2(3).unwrap().order(), 24);
        assert_eq!(special_linear_2(5).unwrap().order(), 120);
        assert_eq!(psl_2_7().unwrap().order(), 168);
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q8 = generalized_quaternion(8).unwrap();
        let involutions: Vec<_> = q8
            .elements()
            .unwrap()
            .iter()
            .filter(|e| e.order() == 2)
            .cloned()
            .collect();
        assert_eq!(involutions.len(), 1);
        let q16 = generalized_quaternion(16).unwrap();
        let count = q16.elements().unwrap().iter().filter(|e| e.order() == 2).count();
        assert_eq!(count, 1);
    }

    #[test]
    fn direct_products() {
        let c2 = cyclic(2).unwrap();
        let a4 = alternating(4).unwrap();
        let g = direct_product(&c2, &a4).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.degree(), 6);
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{"name":"V4","degree":4,"generators":["(1 2)(3 4)","(1 3)(2 4)"]}"#;
        let (spec, group) = parse_spec(text).unwrap();
        assert_eq!(group.order(), 4);
        let dumped = serde_json::to_string(&GroupSpec::from_group(&spec.name, &group)).unwrap();
        let (_, again) = parse_spec(&dumped).unwrap();
        assert!(group.same_group(&again));
    }

    #[test]
    fn spec_image_arrays() {
        let text = r#"{"name":"V4","degree":4,"generators":[[2,1,4,3],[3,4,1,2]]}"#;
        let (_, group) = parse_spec(text).unwrap();
        assert_eq!(group.order(), 4);
        let other = parse_spec(r#"{"name":"V4","degree":4,"generators":["(1 2)(3 4)","(1 3)(2 4)"]}"#)
            .unwrap()
            .1;
        assert!(group.same_group(&other));
    }

    #[test]
    fn spec_order_mismatch_is_an_ingestion_error() {
        let text = r#"{"name":"X","degree":4,"generators":["(1 2 3)"],"expected_order":24}"#;
        match parse_spec(text) {
            Err(Error::Ingestion(msg)) => assert!(msg.contains("expected 24")),
            other => panic!("expected ingestion error, got {other:?}"),
        }
    }

    #[test]
    fn spec_rejects_bad_cycles() {
        assert!(parse_spec(r#"{"name":"X","degree":4,"generators":["(1 9)"]}"#).is_err());
        assert!(parse_spec(r#"{"name":"X","degree":4,"generators":[[1,1,2,3]]}"#).is_err());
        assert!(parse_spec(r#"{"name":"X","degree":4"#).is_err());
    }
}
