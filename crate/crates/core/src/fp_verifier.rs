//! Brute-force cross-check of the lines problem over small prime fields.

use serde::Serialize;

use crate::enumerative::{euler_lines_with_budget, lines_algebra, PlaneConfig};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::form::determinant;
use crate::groebner::budget_from_env;
use crate::gw::{GWClass, SquareClass};
use crate::poly::MonomialOrder;
use crate::rng;

/// Ambient dimension of the vector space whose 2-planes are enumerated.
pub const AMBIENT: usize = 5;

/// A 2-dimensional subspace of `F_p⁵` in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace2 {
    pub rref: [[u64; AMBIENT]; 2],
}

impl Subspace2 {
    /// Canonical form of the span of two vectors, or `None` if they are dependent.
    pub fn span(p: u64, v: [u64; AMBIENT], w: [u64; AMBIENT]) -> Option<Subspace2> {
        let mut rows = [v.map(|x| x % p), w.map(|x| x % p)];
        let mut r = 0;
        for c in 0..AMBIENT {
            if r == 2 {
                break;
            }
            let Some(pr) = (r..2).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, pr);
            let inv = inv_mod(rows[r][c], p);
            rows[r] = rows[r].map(|x| mul(x, inv, p));
            for i in 0..2 {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for k in 0..AMBIENT {
                        rows[i][k] = sub(rows[i][k], mul(f, rows[r][k], p), p);
                    }
                }
            }
            r += 1;
        }
        (r == 2).then_some(Subspace2 { rref: rows })
    }

    pub fn pivots(&self) -> (usize, usize) {
        let piv = |row: &[u64; AMBIENT]| row.iter().position(|&x| x != 0).expect("rank two");
        (piv(&self.rref[0]), piv(&self.rref[1]))
    }

    /// Chart coordinates `(a₁, a₂, a₃, b₁, b₂, b₃)` when the last two
    /// columns form an invertible block.
    pub fn chart_coords(&self, p: u64) -> Option<[u64; 2 * AMBIENT - 4]> {
        let [r0, r1] = &self.rref;
        let (m00, m01, m10, m11) = (r0[3], r0[4], r1[3], r1[4]);
        let det = sub(mul(m00, m11, p), mul(m01, m10, p), p);
        if det == 0 {
            return None;
        }
        let di = inv_mod(det, p);
        // Rows of M⁻¹·W are ẽ₄ and ẽ₅.
        let inv = [
            [mul(m11, di, p), mul(p - m01 % p, di, p)],
            [mul(p - m10 % p, di, p), mul(m00, di, p)],
        ];
        let mut out = [0; 2 * AMBIENT - 4];
        for j in 0..3 {
            out[j] = (mul(inv[0][0], r0[j], p) + mul(inv[0][1], r1[j], p)) % p;
            out[3 + j] = (mul(inv[1][0], r0[j], p) + mul(inv[1][1], r1[j], p)) % p;
        }
        Some(out)
    }
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    r
}

/// Every 2-dimensional subspace of `F_p⁵`, grouped by pivot pattern.
pub fn enumerate_subspaces(p: u64) -> Vec<Subspace2> {
    let mut out = Vec::new();
    for i in 0..AMBIENT {
        for j in i + 1..AMBIENT {
            let free0: Vec<usize> = (i + 1..AMBIENT).filter(|&c| c != j).collect();
            let free1: Vec<usize> = (j + 1..AMBIENT).collect();
            let slots = free0.len() + free1.len();
            let total = p.pow(slots as u32);
            for mut code in 0..total {
                let mut rref = [[0; AMBIENT]; 2];
                rref[0][i] = 1;
                rref[1][j] = 1;
                for &c in free0.iter() {
                    rref[0][c] = code % p;
                    code /= p;
                }
                for &c in free1.iter() {
                    rref[1][c] = code % p;
                    code /= p;
                }
                out.push(Subspace2 { rref });
            }
        }
    }
    out
}

/// `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

fn residues(p: u64, v: &[FieldElem]) -> Result<Vec<u64>> {
    v.iter()
        .map(|x| match x {
            FieldElem::Fp(a) => Ok(*a % p),
            _ => Err(Error::FieldMismatch("expected a prime-field configuration".into())),
        })
        .collect()
}

fn pair(p: u64, c: &[u64], w: &[u64; AMBIENT]) -> u64 {
    c.iter().zip(w).fold(0, |acc, (a, b)| (acc + mul(*a, *b, p)) % p)
}

/// `W` meets `{α = β = 0}` exactly when the pairing matrix of `(α, β)`
/// against a basis of `W` is singular.
pub fn incident(p: u64, w: &Subspace2, alpha: &[u64], beta: &[u64]) -> bool {
    let [w0, w1] = &w.rref;
    let d = sub(
        mul(pair(p, alpha, w0), pair(p, beta, w1), p),
        mul(pair(p, alpha, w1), pair(p, beta, w0), p),
        p,
    );
    d == 0
}

/// Basis of the kernel of the 2×5 matrix with rows `α`, `β`.
pub fn plane_basis(p: u64, alpha: &[u64], beta: &[u64]) -> Vec<[u64; AMBIENT]> {
    let mut a = vec![alpha.to_vec(), beta.to_vec()];
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..AMBIENT {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        a[r] = a[r].iter().map(|&x| mul(x, inv, p)).collect();
        for i in 0..a.len() {
            if i != r && a[i][c] % p != 0 {
                let f = a[i][c];
                let row = a[r].clone();
                for k in 0..AMBIENT {
                    a[i][k] = sub(a[i][k], mul(f, row[k], p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..AMBIENT)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [0; AMBIENT];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][free] % p) % p;
            }
            v
        })
        .collect()
}

/// Incidence through the determinant of `[basis of W; basis of the plane]`.
pub fn incident_by_stack(p: u64, w: &Subspace2, alpha: &[u64], beta: &[u64]) -> Result<bool> {
    let ctx = FieldCtx::prime(p)?;
    let basis = plane_basis(p, alpha, beta);
    if basis.len() != 3 {
        return Err(Error::Invalid("alpha and beta are dependent".into()));
    }
    let rows: Vec<Vec<FieldElem>> = w
        .rref
        .iter()
        .chain(basis.iter())
        .map(|r| r.iter().map(|&x| FieldElem::Fp(x)).collect())
        .collect();
    Ok(ctx.is_zero(&determinant(&ctx, &rows)))
}

fn config_residues(p: u64, planes: &PlaneConfig) -> Result<Vec<(Vec<u64>, Vec<u64>)>> {
    if planes.n() + 1 != AMBIENT {
        return Err(Error::Invalid("the brute-force check covers lines in P^4".into()));
    }
    planes
        .planes()
        .iter()
        .map(|(a, b)| Ok((residues(p, a)?, residues(p, b)?)))
        .collect()
}

/// All `F_p`-rational lines in `P⁴` meeting every plane of the configuration.
pub fn enumerate_incident_lines(p: u64, planes: &PlaneConfig) -> Result<Vec<Subspace2>> {
    let cov = config_residues(p, planes)?;
    Ok(enumerate_subspaces(p)
        .into_iter()
        .filter(|w| cov.iter().all(|(a, b)| incident(p, w, a, b)))
        .collect())
}

fn char_poly_root(ctx: &FieldCtx, m: &[Vec<FieldElem>], lambda: u64) -> bool {
    let l = FieldElem::Fp(lambda);
    let shifted: Vec<Vec<FieldElem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| if i == j { ctx.sub(x, &l) } else { x.clone() })
                .collect()
        })
        .collect();
    ctx.is_zero(&determinant(ctx, &shifted))
}

/// `F_p`-rational points of the lines quotient algebra, in chart coordinates.
pub fn rational_points(p: u64, planes: &PlaneConfig) -> Result<Vec<Vec<u64>>> {
    let ctx = FieldCtx::prime(p)?;
    let (_, alg) = lines_algebra(planes, MonomialOrder::DegRevLex, budget_from_env())?;
    let nvars = alg.vars().len();
    // Each coordinate of a rational point is an eigenvalue of that variable's multiplication map.
    let candidates: Vec<Vec<u64>> = (0..nvars)
        .map(|v| (0..p).filter(|&l| char_poly_root(&ctx, alg.var_matrix(v), l)).collect())
        .collect();
    let gb = alg.groebner().polys();
    let mut out = Vec::new();
    let mut idx = vec![0usize; nvars];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let point: Vec<FieldElem> = idx.iter().enumerate().map(|(v, &i)| FieldElem::Fp(candidates[v][i])).collect();
        let mut on = true;
        for g in &gb {
            if !ctx.is_zero(&g.eval(&point)?) {
                on = false;
                break;
            }
        }
        if on {
            out.push(idx.iter().enumerate().map(|(v, &i)| candidates[v][i]).collect());
        }
        let mut k = 0;
        loop {
            if k == nvars {
                out.sort();
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Outcome of one configuration.
#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub configuration: serde_json::Value,
    /// `None` when the configuration was usable.
    pub degenerate: Option<String>,
    pub dim: Option<usize>,
    pub class: Option<String>,
    pub rank: Option<usize>,
    pub disc: Option<String>,
    pub class_swapped: Option<String>,
    pub disc_swapped: Option<String>,
    pub incident_lines: Vec<Subspace2>,
    pub incident_off_chart: usize,
    pub rational_points: Vec<Vec<u64>>,
    pub rank_ok: bool,
    pub disc_ok: bool,
    pub swap_ok: bool,
    pub points_ok: bool,
    pub passed: bool,
}

impl TrialReport {
    fn degenerate(planes: &PlaneConfig, why: String) -> Self {
        TrialReport {
            configuration: planes.to_json(),
            degenerate: Some(why),
            dim: None,
            class: None,
            rank: None,
            disc: None,
            class_swapped: None,
            disc_swapped: None,
            incident_lines: Vec::new(),
            incident_off_chart: 0,
            rational_points: Vec::new(),
            rank_ok: false,
            disc_ok: false,
            swap_ok: false,
            points_ok: false,
            passed: false,
        }
    }
}

fn disc_of(c: &GWClass) -> Result<SquareClass> {
    Ok(c.invariants()?.disc)
}

/// Runs the full cross-check on one configuration. Degenerate
/// configurations are reported, not raised.
pub fn check_configuration(p: u64, planes: &PlaneConfig) -> Result<TrialReport> {
    let ctx = FieldCtx::prime(p)?;
    let lines = match euler_lines_with_budget(planes, MonomialOrder::DegRevLex, budget_from_env()) {
        Ok(r) => r,
        Err(e @ (Error::NonIsolatedZeros | Error::ChartDegenerate { .. })) => {
            let mut rep = TrialReport::degenerate(planes, e.kind().to_string());
            if let Error::ChartDegenerate { dim, .. } = e {
                rep.dim = Some(dim);
            }
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    let disc = disc_of(&lines.class)?;
    let disc_swapped = disc_of(&lines.class_swapped)?;
    let one = SquareClass::one(&ctx);
    let minus_one = SquareClass::from_int(&ctx, -1)?;

    let incident = enumerate_incident_lines(p, planes)?;
    let mut on_chart: Vec<Vec<u64>> = incident.iter().filter_map(|w| w.chart_coords(p)).map(|c| c.to_vec()).collect();
    on_chart.sort();
    let off_chart = incident.len() - on_chart.len();
    let points = rational_points(p, planes)?;

    let rank_ok = lines.class.rank() == lines.catalan;
    let disc_ok = disc == one;
    let swap_ok = disc_swapped == disc.mul(&minus_one)? && lines.class_swapped.rank() == lines.class.rank();
    let points_ok = on_chart == points && off_chart == 0 && points.len() <= lines.dim;
    Ok(TrialReport {
        configuration: planes.to_json(),
        degenerate: None,
        dim: Some(lines.dim),
        class: Some(lines.class.to_string()),
        rank: Some(lines.class.rank()),
        disc: Some(disc.to_string()),
        class_swapped: Some(lines.class_swapped.to_string()),
        disc_swapped: Some(disc_swapped.to_string()),
        incident_lines: incident,
        incident_off_chart: off_chart,
        rational_points: points,
        rank_ok,
        disc_ok,
        swap_ok,
        points_ok,
        passed: rank_ok && disc_ok && swap_ok && points_ok,
    })
}

/// Attempts per trial before giving up on finding a chart-generic configuration.
pub const MAX_RESEEDS: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct Trial {
    pub index: usize,
    pub reseeds: usize,
    pub skipped: Vec<TrialReport>,
    pub report: TrialReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub seed: u64,
    pub trials: Vec<Trial>,
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.degenerate == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Draws configurations from one generator seeded with `seed`; a trial
/// whose configuration is degenerate moves on to the next draw.
pub fn verify_lines_class(p: u64, seed: u64, trials: usize) -> Result<VerifyReport> {
    let ctx = FieldCtx::prime(p)?;
    let mut gen = rng::seeded(seed);
    let mut out = Vec::with_capacity(trials);
    for index in 0..trials {
        let mut skipped = Vec::new();
        let report = loop {
            let planes = PlaneConfig::random(&ctx, AMBIENT - 1, &mut gen)?;
            let rep = check_configuration(p, &planes)?;
            if rep.degenerate.is_none() || skipped.len() + 1 >= MAX_RESEEDS {
                break rep;
            }
            skipped.push(rep);
        };
        out.push(Trial {
            index,
            reseeds: skipped.len(),
            skipped,
            report,
        });
    }
    let passed = out.iter().filter(|t| t.report.passed).count();
    let degenerate = out.iter().filter(|t| t.report.degenerate.is_some()).count();
    Ok(VerifyReport {
        p,
        seed,
        passed,
        failed: out.len() - passed - degenerate,
        degenerate,
        trials: out,
    })
}
