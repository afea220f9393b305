//! Filtered ideals of the local ring, the tangent cone ideal `I*` and
//! minimal generator counts on both sides.

use crate::error::{Error, Result};
use crate::poly::{Mode, MonoOrder, Poly, Ring, TermOrder, Vector};
use crate::stdbasis::{
    eliminate, ideal_groebner, ideal_standard_basis, minimal_homogeneous_generators, minimal_local_generators,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FiltrationKind {
    /// `{n^p I}`
    Adic,
    /// `{n^p ∩ I}`, whose associated graded ideal is `I*`.
    Intersection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredIdeal {
    ring: Ring,
    gens: Vec<Poly>,
    kind: FiltrationKind,
}

impl FilteredIdeal {
    pub fn new(ring: &Ring, gens: Vec<Poly>, kind: FiltrationKind) -> Result<FilteredIdeal> {
        if ring.mode() != Mode::Local {
            return Err(Error::ContextMismatch("filtered ideals live in the local ring".into()));
        }
        for g in &gens {
            ring.check(g)?;
            match g.valuation() {
                None => return Err(Error::Invalid("zero generator".into())),
                Some(0) => return Err(Error::Invalid(format!("generator {} is a unit", ring.fmt_poly(g)))),
                _ => {}
            }
        }
        Ok(FilteredIdeal {
            ring: ring.clone(),
            gens,
            kind,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    ring: Ring,
    gens: Vec<Poly>,
}

impl GradedIdeal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<GradedIdeal> {
        let ring = ring.with_mode(Mode::Graded);
        let mut kept = Vec::new();
        for g in gens {
            ring.check(&g)?;
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Invalid(format!("{} is not homogeneous", ring.fmt_poly(&g))));
            }
            kept.push(g);
        }
        Ok(GradedIdeal { ring, gens: kept })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Generator degrees in ascending order (with repetition).
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.gens.iter().map(|g| g.degree().unwrap()).collect();
        d.sort_unstable();
        d
    }

    /// Reduced degrevlex Gröbner basis.
    pub fn groebner(&self) -> Result<Vec<Poly>> {
        ideal_groebner(&self.gens, MonoOrder::DegRevLex)
    }

    /// Same ideal with a minimal homogeneous generating set, sorted by
    /// degree (stable in the input order).
    pub fn minimalized(&self) -> Result<GradedIdeal> {
        let ord = TermOrder::ideal(MonoOrder::DegRevLex);
        let v: Vec<Vector> = self.gens.iter().map(|g| g.to_vector(0, &ord)).collect();
        let keep = minimal_homogeneous_generators(&v, &ord)?;
        let mut gens: Vec<Poly> = keep.into_iter().map(|i| self.gens[i].clone()).collect();
        gens.sort_by_key(|g| g.degree());
        Ok(GradedIdeal {
            ring: self.ring.clone(),
            gens,
        })
    }

    pub fn same_ideal(&self, o: &GradedIdeal) -> Result<bool> {
        Ok(self.groebner()? == o.groebner()?)
    }
}

#[derive(Clone, Debug)]
pub struct TangentCone {
    /// `I*` with a minimal homogeneous generating set.
    pub ideal: GradedIdeal,
    /// The local standard basis the initial forms came from.
    pub standard_basis: Vec<Poly>,
    /// Initial forms of `standard_basis`, in the same order.
    pub raw_forms: Vec<Poly>,
}

pub fn tangent_cone(i: &FilteredIdeal) -> Result<TangentCone> {
    tangent_cone_with(i, MonoOrder::NegDegRevLex)
}

/// Tangent cone through a standard basis under the given local order.
pub fn tangent_cone_with(i: &FilteredIdeal, mono: MonoOrder) -> Result<TangentCone> {
    if i.kind != FiltrationKind::Intersection {
        return Err(Error::Invalid(
            "the tangent cone is the associated graded ideal of the intersection filtration".into(),
        ));
    }
    if mono.is_global() {
        return Err(Error::GlobalOrder);
    }
    let sb = ideal_standard_basis(&i.gens, mono)?;
    let raw_forms = sb.iter().map(|f| f.initial_form()).collect::<Result<Vec<_>>>()?;
    let ideal = GradedIdeal::new(&i.ring, raw_forms.clone())?.minimalized()?;
    Ok(TangentCone {
        ideal,
        standard_basis: sb,
        raw_forms,
    })
}

pub fn tangent_cone_ideal(i: &FilteredIdeal) -> Result<GradedIdeal> {
    Ok(tangent_cone(i)?.ideal)
}

/// Indices of a minimal local generating subset of `I`'s generators.
pub fn minimal_local_subset(i: &FilteredIdeal) -> Result<Vec<usize>> {
    let ord = TermOrder::ideal(MonoOrder::NegDegRevLex);
    let v: Vec<Vector> = i.gens.iter().map(|g| g.to_vector(0, &ord)).collect();
    minimal_local_generators(&v, &ord)
}

/// `dim_k I/nI`.
pub fn mu_local(i: &FilteredIdeal) -> Result<usize> {
    Ok(minimal_local_subset(i)?.len())
}

pub fn mu_graded(j: &GradedIdeal) -> Result<usize> {
    Ok(j.minimalized()?.gens.len())
}

/// `μ(I) = μ(I*)`: `I` is minimally generated by a standard basis.
pub fn is_min_standard_base(i: &FilteredIdeal) -> Result<bool> {
    Ok(mu_local(i)? == mu_graded(&tangent_cone_ideal(i)?)?)
}

/// Kernel of `k[[x_1..x_n]] → k[[t]]`, `x_i ↦ t^{a_i}`, minimally generated.
pub fn semigroup_defining_ideal(exps: &[u32]) -> Result<FilteredIdeal> {
    if exps.is_empty() {
        return Err(Error::Invalid("empty semigroup".into()));
    }
    if exps.contains(&0) {
        return Err(Error::Invalid("semigroup exponents must be positive".into()));
    }
    let n = exps.len();
    let ring = Ring::indexed(n, Mode::Local)?;
    let mut names = vec!["t".to_string()];
    names.extend(ring.names().iter().cloned());
    let ext = Ring::new(&names, ring.field(), Mode::Graded)?;
    let t = ext.var(0);
    let gens: Vec<Poly> = exps
        .iter()
        .enumerate()
        .map(|(i, &a)| ext.var(i + 1).sub(&t.pow(a, ring.field())))
        .collect();
    let kernel = eliminate(&gens, &[0], n + 1)?;
    // drop the (absent) t and renumber
    let moved: Vec<Poly> = kernel
        .iter()
        .map(|g| {
            let images: Vec<Poly> = std::iter::once(Poly::zero())
                .chain((0..n).map(|i| ring.var(i)))
                .collect();
            g.substitute(&images, ring.field())
        })
        .collect();
    let full = FilteredIdeal::new(&ring, moved, FiltrationKind::Intersection)?;
    let keep = minimal_local_subset(&full)?;
    let gens = keep.into_iter().map(|i| full.gens[i].clone()).collect();
    FilteredIdeal::new(&ring, gens, FiltrationKind::Intersection)
}
