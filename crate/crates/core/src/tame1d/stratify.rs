//! Weak stratification of the line compatible with a finite family of sets.
//!
//! The family is closed under closure, interior, frontier and Cantor-Bendixson
//! derivative of the current atoms until every such image is a union of atoms. At
//! the fixpoint each atom is open or discrete and the frontier of each atom is a
//! union of atoms. Everything is re-checked by [`verify_stratification`].

use serde::Serialize;

use super::rat::ExtRat;
use super::set::{SetView, Tame1DSet};
use super::zerodim::Node;
use super::TameError;

pub const FIXPOINT_CAP: usize = 32;

#[derive(Clone, Debug)]
pub struct Stratum {
    pub set: Tame1DSet,
    pub dim: u8,
}

#[derive(Clone, Debug)]
pub struct LineStratification {
    pub strata: Vec<Stratum>,
    /// `frontier[i]` lists the strata whose union is `∂ strata[i]`.
    pub frontier: Vec<Vec<usize>>,
    pub rounds: usize,
}

#[derive(Serialize)]
pub struct StratumView {
    pub index: usize,
    pub dim: u8,
    pub set: SetView,
    pub frontier: Vec<usize>,
}

fn refine(atoms: Vec<Tame1DSet>, by: &Tame1DSet) -> Result<Vec<Tame1DSet>, TameError> {
    let mut out = Vec::with_capacity(atoms.len() * 2);
    for a in atoms {
        for piece in [a.intersect(by)?, a.difference(by)?] {
            if !piece.is_empty() {
                out.push(piece);
            }
        }
    }
    Ok(out)
}

fn is_union_of(set: &Tame1DSet, atoms: &[Tame1DSet]) -> Result<bool, TameError> {
    for a in atoms {
        let inside = a.intersect(set)?;
        if !inside.is_empty() && !a.is_subset(set)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn stratify_line(family: &[Tame1DSet]) -> Result<LineStratification, TameError> {
    let mut generators: Vec<Tame1DSet> = family.to_vec();
    let mut atoms = vec![Tame1DSet::line()];
    for g in &generators {
        atoms = refine(atoms, g)?;
    }
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > FIXPOINT_CAP {
            return Err(TameError::FixpointCapExceeded {
                cap: FIXPOINT_CAP,
                generators: generators.iter().map(|g| g.as_expr()).collect(),
            });
        }
        let mut fresh = Vec::new();
        for a in &atoms {
            for d in [a.closure()?, a.interior()?, a.frontier()?, a.cb_derivative()?] {
                if !is_union_of(&d, &atoms)? {
                    fresh.push(d);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        for d in fresh {
            atoms = refine(atoms, &d)?;
            generators.push(d);
        }
    }

    let coarse = build(atoms.clone(), rounds)?;
    let fine_atoms = split_components(&atoms);
    if fine_atoms.len() > atoms.len() {
        let fine = build(fine_atoms, rounds)?;
        if verify_stratification(&fine, family).is_ok() {
            return Ok(fine);
        }
    }
    verify_stratification(&coarse, family).map_err(TameError::VerificationFailed)?;
    Ok(coarse)
}

fn build(mut atoms: Vec<Tame1DSet>, rounds: usize) -> Result<LineStratification, TameError> {
    atoms.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    let mut strata = Vec::with_capacity(atoms.len());
    for a in atoms {
        let dim = if a.intervals().is_empty() { 0 } else { 1 };
        strata.push(Stratum { set: a, dim });
    }
    let mut frontier = Vec::with_capacity(strata.len());
    for s in &strata {
        let f = s.set.frontier()?;
        let mut idx = Vec::new();
        for (j, t) in strata.iter().enumerate() {
            if !t.set.intersect(&f)?.is_empty() {
                idx.push(j);
            }
        }
        frontier.push(idx);
    }
    Ok(LineStratification { strata, frontier, rounds })
}

/// Leftmost feature of a set, for a stable presentation order.
fn sort_key(s: &Tame1DSet) -> (ExtRat, u8) {
    if let Some(i) = s.intervals().first() {
        return (i.lo.clone(), 1);
    }
    let t = s.truncate(1, 2);
    (t.points.iter().next().cloned().map_or(ExtRat::PosInf, ExtRat::Fin), 0)
}

/// Splits open atoms into their interval components and finite discrete atoms into
/// singletons.
fn split_components(atoms: &[Tame1DSet]) -> Vec<Tame1DSet> {
    let mut out = Vec::new();
    for a in atoms {
        if a.intervals().len() > 1 {
            for iv in a.intervals() {
                let piece = Tame1DSet::interval(iv.clone());
                match piece.difference(&Tame1DSet::from_zerodim(a.holes().clone())) {
                    Ok(p) => out.push(p),
                    Err(_) => return atoms.to_vec(),
                }
            }
        } else if a.intervals().is_empty() && a.zerodim().nodes().iter().all(|n| matches!(n, Node::Point(_))) {
            for n in a.zerodim().nodes() {
                if let Node::Point(p) = n {
                    out.push(Tame1DSet::point(p.clone()));
                }
            }
        } else {
            out.push(a.clone());
        }
    }
    out
}

/// Independent check of a line stratification: pairwise disjoint strata covering the
/// line, each open (dimension 1) or discrete (dimension 0), every family member a union
/// of strata, and every frontier exactly the union of the strata listed for it.
pub fn verify_stratification(st: &LineStratification, family: &[Tame1DSet]) -> Result<(), String> {
    let e = |err: TameError| err.to_string();
    let n = st.strata.len();
    let mut union = Tame1DSet::empty();
    for i in 0..n {
        for j in i + 1..n {
            if !st.strata[i].set.is_disjoint(&st.strata[j].set).map_err(e)? {
                return Err(format!("strata {i} and {j} intersect"));
            }
        }
        union = union.union(&st.strata[i].set).map_err(e)?;
    }
    if !union.set_eq(&Tame1DSet::line()).map_err(e)? {
        return Err("strata do not cover the line".into());
    }
    for (i, s) in st.strata.iter().enumerate() {
        let ok = match s.dim {
            1 => s.set.is_open().map_err(e)?,
            0 => s.set.intervals().is_empty() && s.set.is_discrete().map_err(e)?,
            _ => false,
        };
        if !ok {
            return Err(format!("stratum {i} is neither open nor discrete as claimed (dim {})", s.dim));
        }
    }
    for (k, x) in family.iter().enumerate() {
        for (i, s) in st.strata.iter().enumerate() {
            let meet = !s.set.intersect(x).map_err(e)?.is_empty();
            if meet && !s.set.is_subset(x).map_err(e)? {
                return Err(format!("family member {k} cuts stratum {i}"));
            }
        }
    }
    for (i, s) in st.strata.iter().enumerate() {
        let f = s.set.frontier().map_err(e)?;
        let mut listed = Tame1DSet::empty();
        for &j in &st.frontier[i] {
            listed = listed.union(&st.strata[j].set).map_err(e)?;
        }
        if !f.set_eq(&listed).map_err(e)? {
            return Err(format!("frontier of stratum {i} is not the union of strata {:?}", st.frontier[i]));
        }
    }
    Ok(())
}

impl LineStratification {
    pub fn views(&self) -> Vec<StratumView> {
        self.strata
            .iter()
            .enumerate()
            .map(|(i, s)| StratumView {
                index: i,
                dim: s.dim,
                set: s.set.view(),
                frontier: self.frontier[i].clone(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame1d::{nested_chain, parse_set};

    #[test]
    fn unit_interval() {
        let st = stratify_line(&[parse_set("interval(0,1,oo)").unwrap()]).unwrap();
        assert_eq!(st.strata.len(), 5);
        let dims: Vec<u8> = st.strata.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
        assert_eq!(st.frontier[2], vec![1, 3]);
    }

    #[test]
    fn dyadic_chain() {
        let x = parse_set("chain(0,1,1/2,point,closed)").unwrap();
        let st = stratify_line(&[x]).unwrap();
        assert_eq!(st.strata.len(), 3);
        let anchors = parse_set("chain(0,1,1/2)").unwrap();
        let i = st.strata.iter().position(|s| s.set.set_eq(&anchors).unwrap()).unwrap();
        let z = st.strata.iter().position(|s| s.set.set_eq(&parse_set("point(0)").unwrap()).unwrap()).unwrap();
        assert_eq!(st.frontier[i], vec![z]);
    }

    #[test]
    fn nested_layers() {
        let st = stratify_line(&[nested_chain(2)]).unwrap();
        let zero_dim: Vec<_> = st.strata.iter().filter(|s| s.dim == 0).collect();
        assert_eq!(zero_dim.len(), 3);
        assert_eq!(st.strata.len(), 4);
        verify_stratification(&st, &[nested_chain(2)]).unwrap();
    }
}
