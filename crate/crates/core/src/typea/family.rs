use std::collections::BTreeMap;

use serde::Serialize;

use super::commutant::{commutant, flatten, matrix_span, unflatten};
use crate::error::{Error, Result};
use crate::exactalg::{
    generic_linear_extract, DenseMatrix, DualScalar, Field, FieldScalar, GenericPoly, PolyMatrix,
    PolyRing, Subspace,
};

/// A family of invertible matrices `g(x_1, …, x_k)` given by polynomial
/// entries, with a base point at which `g` is invertible.
#[derive(Clone, Debug)]
pub struct GroupFamily {
    pub name: String,
    pub ring: PolyRing,
    pub generic_element: PolyMatrix,
    pub identity_point: Vec<FieldScalar>,
    /// Polynomials that must not vanish on admissible parameter values.
    pub unit_constraints: Vec<GenericPoly>,
}

impl GroupFamily {
    pub fn new(
        name: impl Into<String>,
        ring: PolyRing,
        generic_element: PolyMatrix,
        identity_point: Vec<FieldScalar>,
        unit_constraints: Vec<GenericPoly>,
    ) -> Result<Self> {
        if generic_element.rows != generic_element.cols {
            return Err(Error::Shape("generic element is not square".into()));
        }
        if identity_point.len() != ring.variables().len() {
            return Err(Error::Shape("base point has the wrong number of coordinates".into()));
        }
        let g0 = generic_element.eval(&identity_point)?;
        if g0.determinant()?.is_zero() {
            return Err(Error::NotInvertible);
        }
        for u in &unit_constraints {
            if u.eval(&identity_point)?.is_zero() {
                return Err(Error::NotInvertible);
            }
        }
        Ok(GroupFamily {
            name: name.into(),
            ring,
            generic_element,
            identity_point,
            unit_constraints,
        })
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn n(&self) -> usize {
        self.generic_element.rows
    }

    pub fn parameter_names(&self) -> &[String] {
        self.ring.variables()
    }

    /// `GL_n` with one parameter per entry.
    pub fn general_linear(n: usize, field: Field) -> Result<Self> {
        let names: Vec<String> = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("x{}{}", i + 1, j + 1)))
            .collect();
        let ring = PolyRing::new(field, &names);
        let entries: Vec<GenericPoly> = (0..n * n).map(|k| ring.var_at(k)).collect();
        let g = PolyMatrix::new(n, n, entries)?;
        let base = flatten(&DenseMatrix::identity(field, n));
        let det = poly_determinant(&g)?;
        Self::new(format!("GL_{n}"), ring, g, base, vec![det])
    }

    /// `{diag(t, t^p, 1) + s E_23}` over `F_p`.
    pub fn nonsmooth_example(p: u64) -> Result<Self> {
        let field = Field::prime(p)?;
        let ring = PolyRing::new(field, &["t", "s"]);
        let t = ring.var("t")?;
        let s = ring.var("s")?;
        let z = ring.zero();
        let one = ring.from_i64(1);
        let g = PolyMatrix::new(
            3,
            3,
            vec![
                t.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                t.pow(p as u32),
                s,
                z.clone(),
                z,
                one,
            ],
        )?;
        Self::new(
            format!("nonsmooth(p={p})"),
            ring,
            g,
            vec![field.one(), field.zero()],
            vec![t],
        )
    }

    /// `I + Σ t_k B_k` over a basis `B_k` of the commutant of `x`, based at 0.
    pub fn commutant_units(x: &DenseMatrix) -> Result<Self> {
        let field = x.field();
        let n = x.rows();
        let basis = commutant(x)?;
        let names: Vec<String> = (1..=basis.len()).map(|k| format!("t{k}")).collect();
        let ring = PolyRing::new(field, &names);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = ring.from_i64((i == j) as i64);
                for (k, b) in basis.iter().enumerate() {
                    let c = b.get(i, j);
                    if !c.is_zero() {
                        e = e.add(&ring.var_at(k).scale(&c)?)?;
                    }
                }
                entries.push(e);
            }
        }
        let g = PolyMatrix::new(n, n, entries)?;
        let base = vec![field.zero(); basis.len()];
        Self::new("commutant units", ring, g, base, Vec::new())
    }
}

/// Cofactor expansion along the first row.
pub fn poly_determinant(m: &PolyMatrix) -> Result<GenericPoly> {
    if m.rows != m.cols {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    let ring = m.get(0, 0).ring().clone();
    fn det(m: &PolyMatrix, rows: &[usize], cols: &[usize], ring: &PolyRing) -> Result<GenericPoly> {
        if rows.is_empty() {
            return Ok(ring.from_i64(1));
        }
        let r = rows[0];
        let mut acc = ring.zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = m.get(r, c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det(m, &rows[1..], &sub_cols, ring)?;
            let term = e.mul(&minor)?;
            acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(acc)
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    det(m, &idx, &idx, &ring)
}

/// Basis of `Lie(fam)`: the ε-parts of `g(p₀)⁻¹ g(p₀ + ε e_k)`.
pub fn lie_algebra(fam: &GroupFamily) -> Result<Vec<DenseMatrix>> {
    let field = fam.field();
    let n = fam.n();
    let g0_inv = fam.generic_element.eval(&fam.identity_point)?.inverse()?;
    let mut tangents = Vec::new();
    for k in 0..fam.identity_point.len() {
        let point: Vec<DualScalar> = fam
            .identity_point
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let b = if i == k { field.one() } else { field.zero() };
                DualScalar::new(a.clone(), b)
            })
            .collect::<Result<_>>()?;
        let d = fam.generic_element.eval_dual(&point)?;
        tangents.push(g0_inv.mul(&d.eps)?);
    }
    let span = matrix_span(field, n, &tangents)?;
    Ok(span
        .basis_vectors()
        .iter()
        .map(|v| unflatten(field, n, v))
        .collect())
}

/// Fixed points of conjugation by the generic element on `Lie(fam)`, as a
/// subspace of `K^{n²}`.
///
/// The unknown is `Y = Σ y_j L_j` over a basis of the Lie algebra; the
/// conditions are the entries of `gY − Yg`, polynomial in the parameters
/// and linear in the `y_j`.
pub fn lie_center_generic(fam: &GroupFamily) -> Result<Subspace> {
    let field = fam.field();
    let n = fam.n();
    let lie = lie_algebra(fam)?;
    if lie.is_empty() {
        return Ok(Subspace::zero(field, n * n));
    }
    let mut names: Vec<String> = fam.parameter_names().to_vec();
    let ys: Vec<String> = (1..=lie.len()).map(|j| format!("__y{j}")).collect();
    names.extend(ys.iter().cloned());
    let ring = PolyRing::new(field, &names);
    let g = fam.generic_element.lift(&ring)?;
    let k = fam.parameter_names().len();
    let mut y_entries = vec![ring.zero(); n * n];
    for (j, l) in lie.iter().enumerate() {
        let yj = ring.var_at(k + j);
        for (e, c) in y_entries.iter_mut().zip(flatten(l)) {
            if !c.is_zero() {
                *e = e.add(&yj.scale(&c)?)?;
            }
        }
    }
    let y = PolyMatrix::new(n, n, y_entries)?;
    let cond = g.mul(&y)?.sub(&y.mul(&g)?)?;
    let unknowns: Vec<&str> = ys.iter().map(String::as_str).collect();
    let sol = generic_linear_extract(&cond.entries, &unknowns)?;
    let sol = if sol.rows() == 0 {
        DenseMatrix::zeros(field, 0, lie.len())
    } else {
        sol
    };
    let combos = sol.nullspace();
    let mats: Vec<DenseMatrix> = combos
        .basis_vectors()
        .iter()
        .map(|coeffs| {
            let mut acc = DenseMatrix::zeros(field, n, n);
            for (c, l) in coeffs.iter().zip(&lie) {
                acc = acc.add(&l.scale(c)?)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    matrix_span(field, n, &mats)
}

/// Entry of the generic element seen as a coordinate function.
enum Coord {
    Const(FieldScalar),
    Monomial { c: FieldScalar, var: usize, exp: u32 },
}

fn classify_entry(p: &GenericPoly) -> Result<Coord> {
    if let Some(c) = p.as_constant() {
        return Ok(Coord::Const(c));
    }
    let terms: Vec<(&[u32], &FieldScalar)> = p.terms().collect();
    if let [(exp, c)] = terms[..] {
        let nz: Vec<usize> = (0..exp.len()).filter(|&i| exp[i] > 0).collect();
        if let [var] = nz[..] {
            return Ok(Coord::Monomial {
                c: c.clone(),
                var,
                exp: exp[var],
            });
        }
    }
    Err(Error::UnsupportedFamily(format!(
        "entry `{p}` is neither constant nor a monomial in one parameter"
    )))
}

/// Dimension of the reduced center of the family: the variety of parameter
/// values whose matrix commutes with the generic element.
///
/// Supported for families whose entries are constants or monomials
/// `c·x^e` in a single parameter. Each distinct power `x^e` becomes a
/// linear coordinate `u`, constants are carried by a homogenizing
/// coordinate `z`, and commuting with the generic element is a linear
/// condition on these coordinates. A parameter is pinned to finitely many
/// values once one of its coordinates is constant on the solution set;
/// pinning is iterated, and every unpinned parameter must own exactly one
/// coordinate.
pub fn reduced_center_dim(fam: &GroupFamily) -> Result<usize> {
    let field = fam.field();
    let n = fam.n();
    let k = fam.parameter_names().len();
    let coords: Vec<Coord> = fam
        .generic_element
        .entries
        .iter()
        .map(classify_entry)
        .collect::<Result<_>>()?;
    let mut slots: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    for c in &coords {
        if let Coord::Monomial { var, exp, .. } = c {
            let next = slots.len();
            slots.entry((*var, *exp)).or_insert(next);
        }
    }
    let z_slot = slots.len();
    let m = z_slot + 1;
    let mut names: Vec<String> = fam.parameter_names().to_vec();
    let us: Vec<String> = (0..m).map(|j| format!("__u{j}")).collect();
    names.extend(us.iter().cloned());
    let ring = PolyRing::new(field, &names);
    let h_entries = coords
        .iter()
        .map(|c| match c {
            Coord::Const(a) => ring.var_at(k + z_slot).scale(a),
            Coord::Monomial { c, var, exp } => ring.var_at(k + slots[&(*var, *exp)]).scale(c),
        })
        .collect::<Result<Vec<_>>>()?;
    let h = PolyMatrix::new(n, n, h_entries)?;
    let g = fam.generic_element.lift(&ring)?;
    let cond = g.mul(&h)?.sub(&h.mul(&g)?)?;
    let unknowns: Vec<&str> = us.iter().map(String::as_str).collect();
    let sys = generic_linear_extract(&cond.entries, &unknowns)?;
    let sys = if sys.rows() == 0 {
        DenseMatrix::zeros(field, 0, m)
    } else {
        sys
    };

    // directions of the affine solution set {z = 1}; when no entry is
    // constant z is unconstrained and forcing it to 0 drops it
    let unit = |j: usize| {
        let mut row = vec![field.zero(); m];
        row[j] = field.one();
        row
    };
    let mut extra = vec![unit(z_slot)];
    let mut pinned = vec![false; k];
    loop {
        let w0 = DenseMatrix::vstack(
            field,
            m,
            &[&sys, &DenseMatrix::from_rows(field, m, &extra)?],
        )?
        .nullspace();
        let mut changed = false;
        for (&(var, _), &slot) in &slots {
            if pinned[var] {
                continue;
            }
            let constant = w0.basis_vectors().iter().all(|v| v[slot].is_zero());
            if constant {
                pinned[var] = true;
                changed = true;
            }
        }
        if !changed {
            let free: Vec<usize> = (0..k).filter(|&v| !pinned[v]).collect();
            for &v in &free {
                if slots.keys().filter(|(var, _)| *var == v).count() > 1 {
                    return Err(Error::UnsupportedFamily(format!(
                        "parameter `{}` appears with several exponents and is not pinned",
                        fam.parameter_names()[v]
                    )));
                }
            }
            return Ok(w0.dim());
        }
        for (&(var, _), &slot) in &slots {
            if pinned[var] {
                let u = unit(slot);
                if !extra.contains(&u) {
                    extra.push(u);
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub family: String,
    pub dim_lie_z: usize,
    pub dim_z_red: usize,
    pub smooth: bool,
}

pub fn center_report(fam: &GroupFamily) -> Result<CenterReport> {
    let dim_lie_z = lie_center_generic(fam)?.dim();
    let dim_z_red = reduced_center_dim(fam)?;
    Ok(CenterReport {
        family: fam.name.clone(),
        dim_lie_z,
        dim_z_red,
        smooth: dim_lie_z == dim_z_red,
    })
}

/// Center of `{diag(t, t^p, 1) + s E_23}`: its Lie algebra is spanned by
/// `diag(1,0,0)` but the group center is finite.
pub fn nonsmooth_center_report(p: u64) -> Result<CenterReport> {
    center_report(&GroupFamily::nonsmooth_example(p)?)
}
