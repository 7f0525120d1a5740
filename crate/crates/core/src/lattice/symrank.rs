use serde::{Deserialize, Serialize};

use super::orbits::{echelon, primes_of, OrbitDecomposition};
use crate::error::{Error, Result};

/// Result of the symmetric rank search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymrankCertificate {
    pub value: usize,
    /// indices into the decomposition's orbit list
    pub witness: Vec<usize>,
    pub witness_representatives: Vec<Vec<u32>>,
    /// every single orbit that generates alone and has size `value`
    pub optimal_single_orbits: Vec<usize>,
    /// search nodes visited
    pub nodes: u64,
    /// whether the union of every orbit smaller than `value` generates
    /// (the certificate requires `false`)
    pub smaller_union_generates: bool,
}

// One span per prime, kept as echelon rows.
#[derive(Clone)]
struct Span {
    rows: Vec<Vec<Vec<u32>>>,
}

struct Ctx<'a> {
    n: usize,
    primes: &'a [u32],
}

impl Ctx<'_> {
    fn empty(&self) -> Span {
        Span { rows: vec![Vec::new(); self.primes.len()] }
    }

    fn of_vectors(&self, vs: &[Vec<u32>]) -> Span {
        let rows = self
            .primes
            .iter()
            .map(|&p| {
                let mut m: Vec<Vec<u32>> = vs.iter().map(|v| v.iter().map(|&x| x % p).collect()).collect();
                let r = echelon(&mut m, self.n, p);
                m.truncate(r);
                m
            })
            .collect();
        Span { rows }
    }

    fn join(&self, a: &Span, b: &Span) -> Span {
        let rows = self
            .primes
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let mut m: Vec<Vec<u32>> = a.rows[k].iter().chain(&b.rows[k]).cloned().collect();
                let r = echelon(&mut m, self.n, p);
                m.truncate(r);
                m
            })
            .collect();
        Span { rows }
    }

    fn dims(&self, s: &Span) -> Vec<usize> {
        s.rows.iter().map(Vec::len).collect()
    }

    fn full(&self, s: &Span) -> bool {
        s.rows.iter().all(|r| r.len() == self.n)
    }
}

/// Minimum total size of a union of orbits generating `(Z/dZ)^n`.
pub fn symrank(dec: &OrbitDecomposition) -> Result<SymrankCertificate> {
    let d = dec.modulus;
    let n = dec.rank;
    let primes = primes_of(d)?;
    let ctx = Ctx { n, primes };
    let spans: Vec<Span> = (0..dec.orbits.len()).map(|i| ctx.of_vectors(&dec.vectors(i))).collect();
    let sizes: Vec<usize> = dec.orbits.iter().map(|o| o.size).collect();

    let mut best: Option<(usize, Vec<usize>)> = None;
    // seed: the smallest orbit generating on its own
    if let Some(i) = (0..spans.len()).find(|&i| ctx.full(&spans[i])) {
        best = Some((sizes[i], vec![i]));
    }
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    search(&ctx, &spans, &sizes, 0, &ctx.empty(), 0, &mut chosen, &mut best, &mut nodes);
    let (value, witness) = best.ok_or_else(|| Error::Verification("the orbits do not generate".into()))?;

    let smaller: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] < value).collect();
    let union = smaller.iter().fold(ctx.empty(), |acc, &i| ctx.join(&acc, &spans[i]));
    let optimal_single_orbits = (0..sizes.len()).filter(|&i| sizes[i] == value && ctx.full(&spans[i])).collect();
    Ok(SymrankCertificate {
        value,
        optimal_single_orbits,
        witness_representatives: witness.iter().map(|&i| dec.orbits[i].representative.clone()).collect(),
        witness,
        nodes,
        smaller_union_generates: ctx.full(&union),
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    ctx: &Ctx,
    spans: &[Span],
    sizes: &[usize],
    start: usize,
    current: &Span,
    size: usize,
    chosen: &mut Vec<usize>,
    best: &mut Option<(usize, Vec<usize>)>,
    nodes: &mut u64,
) {
    *nodes += 1;
    if ctx.full(current) {
        if best.as_ref().is_none_or(|(b, _)| size < *b) {
            *best = Some((size, chosen.clone()));
        }
        return;
    }
    let limit = best.as_ref().map_or(usize::MAX, |(b, _)| *b);
    // only orbits smaller than the remaining budget can still help
    let budget = limit.saturating_sub(size);
    let usable: Vec<usize> = (start..spans.len()).filter(|&i| sizes[i] < budget).collect();
    let reach = usable.iter().fold(current.clone(), |acc, &i| ctx.join(&acc, &spans[i]));
    if !ctx.full(&reach) {
        return;
    }
    let dims = ctx.dims(current);
    for &i in &usable {
        if sizes[i] >= limit.saturating_sub(size) {
            break;
        }
        let next = ctx.join(current, &spans[i]);
        if ctx.dims(&next) == dims {
            // contributes nothing (including the zero orbit)
            continue;
        }
        chosen.push(i);
        search(ctx, spans, sizes, i + 1, &next, size + sizes[i], chosen, best, nodes);
        chosen.pop();
        if best.as_ref().is_some_and(|(b, _)| size + sizes[i] >= *b) {
            // later orbits are no smaller
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, orbits_mod, LatticeAction};

    #[test]
    fn trivial_group_rank_one() {
        let l = LatticeAction::custom("triv", vec![vec![1]], 1, vec![1], "basis", 4, 1).unwrap();
        let cert = symrank(&orbits_mod(&l, 4).unwrap()).unwrap();
        assert_eq!(cert.value, 1);
        assert!(!cert.smaller_union_generates);
    }

    #[test]
    fn a1_and_a3() {
        for (name, want) in [("A1", 2), ("A3", 12)] {
            let l = build_lattice(name, None).unwrap();
            let cert = symrank(&orbits_mod(&l, 4).unwrap()).unwrap();
            assert_eq!(cert.value, want, "{name}");
            assert!(!cert.smaller_union_generates);
        }
    }
}
