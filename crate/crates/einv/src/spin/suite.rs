//! Check records for the spin identities.

use serde_json::{json, Value};

use super::{
    chain_adjoint, check_collapse, check_eq_4_1, check_eq_4_2, check_eq_4_3, check_eq_5_1, check_intertwining,
    d_factors, is_pinned, make_d_spin, pair_count, psi_factors, spin_dim, twisted_adjoint, Clifford, Eps,
    SideBySide, SpinCellPoint, SpinError, XParams,
};
use crate::arith::{rat_string, Sampler, SphereFamily};
use crate::report::{sampled, CheckRecord, SampleFailure, Verdict};

fn rs(s: &mut Sampler) -> (crate::Rational, crate::Rational) {
    let p = s.sphere(SphereFamily::Complex, false);
    let (sv, _) = p.polar().expect("rational radius");
    (p.r, sv)
}

fn outcome(inputs: Value, r: Result<SideBySide, SpinError>) -> Result<(), SampleFailure> {
    match r {
        Ok(o) if o.equal => Ok(()),
        Ok(o) => Err(SampleFailure::new(inputs, json!({ "reason": "sides differ", "comparison": o }))),
        Err(e) => Err(SampleFailure::new(inputs, json!({ "reason": "error", "error": e.to_string() }))),
    }
}

/// Runs the printed sign convention as the record and the two constant
/// conventions on the same samples, reporting which of them hold.
fn with_variants(
    id: String,
    anchor: &str,
    samples: u64,
    seed: u64,
    paper_eps: Value,
    f: impl Fn(&mut Sampler, Eps) -> Result<(), SampleFailure>,
) -> CheckRecord {
    let mut rec = sampled(id.clone(), anchor, samples, seed, |s| f(s, Eps::Paper));
    let mut holds = serde_json::Map::new();
    holds.insert("paper".into(), json!(rec.passed()));
    for eps in [Eps::Plus, Eps::Minus] {
        let v = sampled(id.clone(), anchor, samples, seed, |s| f(s, eps));
        holds.insert(eps.label().into(), json!(v.passed()));
        rec.wall_time += v.wall_time;
    }
    rec.with_detail(json!({ "epsilon_paper": paper_eps, "holds": holds }))
}

fn skipped(id: String, anchor: &str, why: &str) -> CheckRecord {
    let mut rec = CheckRecord::new(id, anchor);
    rec.verdict = Verdict::Skipped;
    rec.with_detail(json!({ "reason": why }))
}

const NOT_SPIN: &str = "m = l + 1: the x-element has norm 1 + 2rs sin(theta) and is not in Spin";

pub fn x_commutes_with_d(n: u32, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for m in 1..=4 * n - 1 {
        for l in 1..=pair_count(n) {
            let id = format!("spin/n={n}/x-commutes-with-d/m={m}/l={l}");
            if is_pinned(m, l) {
                out.push(skipped(id, "Eq 4.1", NOT_SPIN));
                continue;
            }
            let paper = if m == 1 { 1 } else { -1 };
            out.push(with_variants(id, "Eq 4.1", samples, seed, json!(paper), |s, eps| {
                let (r, sv) = rs(s);
                let (t, th, tp) = (s.circle(), s.circle(), s.circle());
                let inputs = json!({ "m": m, "l": l, "r": rat_string(&r), "s": rat_string(&sv), "t": t, "theta": th, "t_prime": tp, "epsilon": eps });
                outcome(inputs, check_eq_4_1(n, m, l, &r, &sv, &t, &th, &tp, eps))
            }));
        }
    }
    out
}

pub fn peel_by_d(n: u32, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for m in 1..=4 * n - 1 {
        for k in 1..=pair_count(n) {
            let id = format!("spin/n={n}/peel-by-d/m={m}/k={k}");
            if is_pinned(m, k) {
                out.push(skipped(id, "Eq 4.2", NOT_SPIN));
                continue;
            }
            out.push(sampled(id, "Eq 4.2", samples, seed, |s| {
                let (r, sv) = rs(s);
                let (t, th) = (s.circle(), s.circle());
                let inputs = json!({ "m": m, "k": k, "r": rat_string(&r), "s": rat_string(&sv), "t": t, "theta": th });
                outcome(inputs, check_eq_4_2(n, m, k, &r, &sv, &t, &th))
            }));
        }
    }
    out
}

fn x_params(n: u32, s: &mut Sampler) -> Vec<XParams> {
    (0..pair_count(n))
        .map(|_| {
            let (r, sv) = rs(s);
            XParams { r, s: sv, t: s.circle(), theta: s.circle() }
        })
        .collect()
}

pub fn full_x_product(n: u32, samples: u64, seed: u64) -> Vec<CheckRecord> {
    (1..=4 * n - 1)
        .map(|m| {
            let id = format!("spin/n={n}/full-x-product/m={m}");
            let paper = if m == 1 { json!(1) } else { json!("(-1)^(l-1)") };
            with_variants(id, "Eq 4.3", samples, seed, paper, |s, eps| {
                let ps = x_params(n, s);
                let inputs = json!({ "m": m, "params": &ps, "epsilon": eps, "skipped_l": if m >= 2 { json!(m - 1) } else { Value::Null } });
                outcome(inputs, check_eq_4_3(n, m, &ps, eps))
            })
        })
        .collect()
}

pub fn torus_commutes_with_d(n: u32, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for l in 1..=2 * n - 1 {
        out.push(sampled(format!("spin/n={n}/torus-commutes-with-d/l={l}"), "Eq 5.1", samples, seed, |s| {
            let (e, t, th, tp) = (s.circle(), s.circle(), s.circle(), s.circle());
            let inputs = json!({ "l": l, "eta": e, "t": t, "theta": th, "t_prime": tp });
            outcome(inputs, check_eq_5_1(n, l, &e, &t, &th, &tp))
        }));
        out.push(sampled(format!("spin/n={n}/torus-collapse/l={l}"), "Sec 5 D_l", samples, seed, |s| {
            let (t, th) = (s.circle(), s.circle());
            match check_collapse(n, l, &t, &th) {
                Ok(true) => Ok(()),
                other => Err(SampleFailure::new(json!({ "l": l, "t": t, "theta": th }), format!("{other:?}"))),
            }
        }));
    }
    out
}

/// `d(t)` is a circle subgroup of unit even elements.
pub fn circle_subgroup(n: u32, samples: u64, seed: u64) -> CheckRecord {
    sampled(format!("spin/n={n}/d-circle-subgroup"), "Sec 4 d(t)", samples, seed, |s| {
        let (t, u) = (s.circle(), s.circle());
        let (dt, du) = (make_d_spin(n, &t), make_d_spin(n, &u));
        let ok = dt.mul(&du) == make_d_spin(n, &t.mul(&u))
            && dt.mul(&du) == du.mul(&dt)
            && dt.is_even()
            && dt.mul(&make_d_spin(n, &t.conj())).is_one();
        if ok {
            Ok(())
        } else {
            Err(SampleFailure::new(json!({ "t": t, "u": u }), "circle law fails"))
        }
    })
}

/// `Ad(gh) = Ad(g) Ad(h)` with exactly orthogonal matrices, on products of
/// x-elements and torus factors.
pub fn adjoint_homomorphism(n: u32, samples: u64, seed: u64) -> CheckRecord {
    sampled(format!("spin/n={n}/twisted-adjoint-homomorphism"), "Sec 4 Spin(8n-2)", samples, seed, |s| {
        let p = SpinCellPoint::sample(n, s, false);
        let fs = psi_factors(n, &p).map_err(|e| SampleFailure::new(&p, e.to_string()))?;
        let a = s.below(fs.len());
        let b = s.below(fs.len());
        let (g, h) = (&fs[a], &fs[b]);
        let inputs = json!({ "point": &p, "factors": [a, b] });
        let mg = twisted_adjoint(g).map_err(|e| SampleFailure::new(&inputs, e.to_string()))?;
        let mh = twisted_adjoint(h).map_err(|e| SampleFailure::new(&inputs, e.to_string()))?;
        let mgh = twisted_adjoint(&g.mul(h)).map_err(|e| SampleFailure::new(&inputs, e.to_string()))?;
        if mgh != mg.mul(&mh) || !mgh.is_orthogonal() {
            return Err(SampleFailure::new(&inputs, "Ad(gh) differs from Ad(g)Ad(h)"));
        }
        Ok(())
    })
}

/// The rotation of the full cell representative, built factor by factor,
/// intertwines with the representative itself.
pub fn representative_chain(n: u32, samples: u64, seed: u64) -> CheckRecord {
    let big = spin_dim(n);
    sampled(format!("spin/n={n}/representative-chain-adjoint"), "Sec 5 psi", samples, seed, |s| {
        let p = SpinCellPoint::sample(n, s, false);
        let mut fs = psi_factors(n, &p).map_err(|e| SampleFailure::new(&p, e.to_string()))?;
        fs.extend(d_factors(n, &s.circle()));
        let g = Clifford::product(big, &fs);
        let m = chain_adjoint(big, &fs).map_err(|e| SampleFailure::new(&p, e.to_string()))?;
        check_intertwining(&g, &m).map_err(|j| SampleFailure::new(&p, format!("column {j} fails")))
    })
}

/// Every spin identity record for one `n`.
pub fn identity_records(n: u32, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let mut out = x_commutes_with_d(n, samples, seed);
    out.extend(peel_by_d(n, samples, seed));
    out.extend(full_x_product(n, samples, seed));
    out.extend(torus_commutes_with_d(n, samples, seed));
    out.push(circle_subgroup(n, samples, seed));
    out.push(adjoint_homomorphism(n, samples, seed));
    out.push(representative_chain(n, samples, seed));
    out
}

