//! Invariant algebras `Z[L]^W` through the weight monoid `L ∩ Λ₊`.
//!
//! A monoid element `m` stands for `Ω(m) = Π ô(ϖᵢ)^{mᵢ}`; Laurent expansion is opt-in.

mod theorem;
mod veronese;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{orbit_sum, ExponentLattice, Frame, LaurentPoly};
use crate::monoid::{weight_monoid, CongruenceMonoid, HilbertBasis};
use crate::relations::Binomial;
use crate::roots::{Family, RootSystem, RootSystemType};

pub use theorem::{c_generator_count, closed_form, d_generator_count, ClosedForm, NamedGenerator};
pub use veronese::{veronese_structure, VeroneseGenerator, VeroneseStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    /// ϖ-coordinates.
    pub exponent: Vec<i64>,
    /// `Π ô(ϖᵢ)^{mᵢ}`.
    pub omega: String,
    /// Family-specific notation, when a closed form is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    pub primary: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub root_system: String,
    pub monoid: CongruenceMonoid,
    /// Whether the closed-form monoid description defines the same lattice as the computed one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_monoid_agrees: Option<bool>,
    pub unit_orders: Vec<i64>,
    pub hilbert_basis: HilbertBasis,
    pub generators: Vec<Generator>,
    pub primaries: Vec<Vec<i64>>,
    pub secondaries: Vec<Vec<i64>>,
    pub cell_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hironaka_cells: Option<Vec<Vec<i64>>>,
    pub generator_count: usize,
    pub polynomial: bool,
    /// 1-based coordinates left unconstrained by the monoid.
    pub free_coordinates: Vec<usize>,
    /// 1-based coordinates whose unit vector is invertible.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub invertible: Vec<usize>,
    pub structure: String,
    /// Whether the Hilbert basis equals the closed-form generator list.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_generators_agree: Option<bool>,
    /// Closed-form relations, indexed over `generators`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Binomial>,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn without_cells(mut self) -> Self {
        self.hironaka_cells = None;
        self
    }
}

fn omega_string(m: &[i64]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { format!("ô(ϖ{})", i + 1) } else { format!("ô(ϖ{})^{x}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}

/// `Ω(m) = Π ô(ϖᵢ)^{mᵢ}` expanded in the α-frame.
pub fn omega_polynomial(rs: &RootSystem, m: &[i64], cap: usize) -> Result<LaurentPoly> {
    if m.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: m.len() });
    }
    let mut acc = LaurentPoly::one(ExponentLattice::alpha(rs.rank()));
    for (i, &k) in m.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let k = u32::try_from(k).map_err(|_| Error::InvalidMonoid(format!("negative exponent {k}")))?;
        let p = orbit_sum(rs, &rs.fundamental_weights_alpha[i], cap)?.pow(k)?;
        let (a, p) = acc.common_scale(&p)?;
        acc = a.mul(&p)?.reduce_scale();
    }
    Ok(acc)
}

/// Every `Ω(h)` over the Hilbert basis, and `Ω(0)`, has root-lattice exponents and is W-invariant.
pub fn verify_omega(rs: &RootSystem, report: &InvariantReport, cap: usize) -> Result<bool> {
    if omega_polynomial(rs, &vec![0; rs.rank()], cap)? != LaurentPoly::one(ExponentLattice::alpha(rs.rank())) {
        return Ok(false);
    }
    for h in &report.hilbert_basis.elements {
        let p = omega_polynomial(rs, h, cap)?;
        if !p.has_integral_exponents() || !p.is_invariant(rs) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn structure_note(monoid: &CongruenceMonoid, basis: &HilbertBasis) -> String {
    if basis.is_diagonal() {
        return format!("polynomial ring in {} variables", basis.len());
    }
    let split = monoid.split_free_part();
    let residual = &split.residual;
    let veronese = residual.congruences().len() == 1
        && residual.congruences()[0].modulus == 2
        && residual.congruences()[0].coeffs.iter().all(|&a| a == 1);
    let inner = if veronese {
        format!("the second Veronese subring of {} variables", residual.dim())
    } else {
        let k = residual.hilbert_basis_box().len();
        format!("Z[W], W ⊂ Z₊^{} with {k} generators", residual.dim())
    };
    if split.free.is_empty() {
        inner
    } else {
        format!("polynomial ring in {} variables over {inner}", split.free.len())
    }
}

fn reindex(named: &[NamedGenerator], rels: &[theorem::NamedRelation], basis: &HilbertBasis) -> Option<Vec<Binomial>> {
    let map: Vec<usize> = named.iter().map(|g| basis.position(&g.exponent)).collect::<Option<_>>()?;
    let side = |s: &[(usize, u32)]| {
        let mut e = vec![0u32; basis.len()];
        for &(k, c) in s {
            e[map[k]] += c;
        }
        e
    };
    Some(rels.iter().map(|(l, r)| Binomial { plus: side(l), minus: side(r) }).collect())
}

/// Report for the root lattice of `ty` under its Weyl group.
pub fn report(ty: RootSystemType) -> Result<InvariantReport> {
    let rs = RootSystem::build(ty)?;
    let monoid = weight_monoid(&rs);
    let basis = monoid.hilbert_basis_box();
    let z = monoid.unit_orders();
    let form = closed_form(ty);
    let n = ty.rank;

    let is_primary = |h: &[i64]| h.iter().enumerate().all(|(i, &x)| x == 0 || x == z[i]) && h.iter().filter(|&&x| x != 0).count() == 1;
    let primaries: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = z[i];
            e
        })
        .collect();
    let secondaries: Vec<Vec<i64>> = basis.elements.iter().filter(|h| !is_primary(h)).cloned().collect();

    let named = form.generators.as_ref();
    let generators_agree = named.map(|g| {
        let mut ours: Vec<&Vec<i64>> = basis.elements.iter().collect();
        let mut theirs: Vec<&Vec<i64>> = g.iter().map(|g| &g.exponent).collect();
        ours.sort();
        theirs.sort();
        theirs.dedup();
        ours == theirs && theirs.len() == g.len()
    });
    let mut secondary_no = 0;
    let generators: Vec<Generator> = basis
        .elements
        .iter()
        .map(|h| {
            let hit = named.and_then(|g| g.iter().find(|g| &g.exponent == h));
            let primary = is_primary(h);
            let label = match hit {
                Some(g) => g.label.clone(),
                None if primary => {
                    let i = h.iter().position(|&x| x != 0).expect("nonzero") + 1;
                    if ty.family == Family::A { format!("π{i}") } else { format!("μ{i}") }
                }
                None => {
                    secondary_no += 1;
                    if ty == RootSystemType::a(2) { "μ".into() } else { format!("m{secondary_no}") }
                }
            };
            Generator {
                label,
                exponent: h.clone(),
                omega: omega_string(h),
                expression: hit.map(|g| g.expression.clone()),
                primary,
            }
        })
        .collect();

    let relations = match (named, generators_agree) {
        (Some(g), Some(true)) => reindex(g, &form.relations, &basis).unwrap_or_default(),
        _ => Vec::new(),
    };

    let mut notes = Vec::new();
    if let Some(iso) = ty.isomorphism_note() {
        notes.push(iso.to_string());
    }
    match ty.family {
        Family::A if n == 2 => notes.push("Z[π1, π2, μ] ≅ Z[x, y, z]/(z^3 − xy)".into()),
        Family::C if n >= 3 => notes.push(format!("{} defining relations π_i·π_j = γ_(i,j)^2", relations.len())),
        Family::D if n >= 4 => {
            notes.push("σ_i = elementary symmetric functions in x_j + x_j^−1; τ₋ = ô(ϖ_(n−1)), τ₊ = ô(ϖ_n)".into());
            notes.push("relations listed show integrality over the primaries; they are not claimed to be defining".into());
        }
        Family::E if n == 7 => notes.push("residual monoid on coordinates 2, 5, 7 is the second Veronese monoid in 3 variables".into()),
        _ => {}
    }
    let index = monoid.index() as usize;
    let cell_count = z.iter().map(|&x| x as usize).product::<usize>() / index;
    let free_coordinates = monoid.split_free_part().free.iter().map(|i| i + 1).collect();
    Ok(InvariantReport {
        root_system: ty.to_string(),
        closed_form_monoid_agrees: form.monoid.as_ref().map(|m| m.same_lattice(&monoid)),
        structure: structure_note(&monoid, &basis),
        polynomial: basis.is_diagonal(),
        generator_count: basis.len(),
        hironaka_cells: Some(monoid.hironaka_cells()),
        unit_orders: z,
        monoid,
        hilbert_basis: basis,
        generators,
        primaries,
        secondaries,
        cell_count,
        free_coordinates,
        invertible: Vec::new(),
        closed_form_generators_agree: generators_agree,
        relations,
        notes,
    })
}

/// `Z[x₁^{±1}, …, xₙ^{±1}]^{Sₙ} = Z[s₁, …, s_{n−1}, sₙ^{±1}]`, the monoid algebra of `Z₊^{n−1} ⊕ Z`.
pub fn report_b_sym(n: usize) -> Result<InvariantReport> {
    if n < 2 {
        return Err(Error::InvalidRank { family: 'B', rank: n });
    }
    let unit = |i: usize, c: i64| {
        let mut e = vec![0; n];
        e[i] = c;
        e
    };
    let mut elements: Vec<Vec<i64>> = (0..n).map(|i| unit(i, 1)).collect();
    elements.push(unit(n - 1, -1));
    let basis = HilbertBasis { elements };
    let generators = basis
        .elements
        .iter()
        .map(|h| {
            let i = h.iter().position(|&x| x != 0).expect("nonzero");
            let label = if h[i] < 0 { format!("s{}^−1", i + 1) } else { format!("s{}", i + 1) };
            Generator {
                expression: Some(format!("elementary symmetric function of degree {} in x1..x{n}", i + 1)),
                omega: label.clone(),
                label,
                exponent: h.clone(),
                primary: h[i] > 0,
            }
        })
        .collect();
    Ok(InvariantReport {
        root_system: format!("B{n} under S{n}"),
        monoid: CongruenceMonoid::free(n),
        closed_form_monoid_agrees: None,
        unit_orders: vec![1; n],
        primaries: (0..n).map(|i| unit(i, 1)).collect(),
        secondaries: Vec::new(),
        cell_count: 1,
        hironaka_cells: Some(vec![vec![0; n]]),
        generator_count: basis.len(),
        hilbert_basis: basis,
        generators,
        polynomial: false,
        free_coordinates: (1..n).collect(),
        invertible: vec![n],
        structure: format!(
            "mixed Laurent polynomial ring Z[s1, …, s{}, s{n}^±1]",
            n - 1
        ),
        closed_form_generators_agree: None,
        relations: Vec::new(),
        notes: vec![format!("monoid Z₊^{} ⊕ Z", n - 1)],
    })
}

/// `s₁, …, sₙ` and `sₙ⁻¹` as Laurent polynomials in `x₁, …, xₙ` (ambient frame of `A_{n−1}`).
pub fn b_sym_generators(n: usize) -> Result<Vec<LaurentPoly>> {
    if n < 2 {
        return Err(Error::InvalidRank { family: 'B', rank: n });
    }
    let ring = ExponentLattice::new(n, 1, Frame::Ambient);
    let mut out = Vec::new();
    for i in 1..=n {
        let mut p = LaurentPoly::zero(ring);
        for subset in subsets_of_size(n, i) {
            let mut e = vec![0i64; n];
            for j in subset {
                e[j] = 1;
            }
            p = p.add(&LaurentPoly::monomial(ring, e, 1)?)?;
        }
        out.push(p);
    }
    out.push(LaurentPoly::monomial(ring, vec![-1; n], 1)?);
    Ok(out)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&j| m >> j & 1 == 1).collect())
        .collect()
}
