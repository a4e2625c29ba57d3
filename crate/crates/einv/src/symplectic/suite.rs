//! Check records for the symplectic identities.

use serde_json::json;

use super::{
    absorbed_values, block_normalize_printed, check_bar_d, check_eq_2_1, check_eq_2_4, check_eq_2_5, check_quat_closed_printed,
    check_underlined, convert_boundary_phases, lemma21_normalize, Kind, LemmaError, LemmaInput, Mismatch, Reading,
    Rule,
};
use crate::arith::{int, Gauss, Rational, Sampler, SphereFamily, UnitCircle};
use crate::report::{sampled, CheckRecord, SampleFailure};

fn family(kind: Kind) -> SphereFamily {
    match kind {
        Kind::Complex => SphereFamily::Complex,
        Kind::Quaternionic => SphereFamily::Quaternionic,
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Complex => "complex",
        Kind::Quaternionic => "quaternionic",
    }
}

fn rule_name(rule: Rule) -> &'static str {
    match rule {
        Rule::ComplexFirst => "complex-first",
        Rule::ComplexLater => "complex-later",
        Rule::QuatFirst => "quaternionic-first",
        Rule::QuatLater => "quaternionic-later",
    }
}

fn points(s: &mut Sampler, kind: Kind, len: usize) -> (Vec<Rational>, Vec<Gauss>) {
    (0..len).map(|_| s.sphere(family(kind), false)).map(|p| (p.r, p.w)).unzip()
}

fn fail(inputs: serde_json::Value) -> impl FnOnce(Mismatch) -> SampleFailure {
    move |m| SampleFailure::new(inputs, m)
}

fn ser_r(r: &[Rational]) -> Vec<String> {
    r.iter().map(crate::arith::rat_string).collect()
}

pub fn block_products(n: usize, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let dim = 4 * n + 1;
    let mut out = Vec::new();
    for kind in [Kind::Complex, Kind::Quaternionic] {
        for k in 0..4 * n {
            let nk = 4 * n - k;
            let name = kind_name(kind);
            out.push(sampled(format!("sp/n={n}/block-product/{name}/k={k}"), "Eq 2.1", samples, seed, |s| {
                let (r, w) = points(s, kind, nk);
                let z = s.circle();
                let inputs = json!({ "k": k, "r": ser_r(&r), "w": &w, "z": &z });
                check_eq_2_1(kind, dim, k, &r, &w, &z).map_err(fail(inputs))
            }));
            let anchor = if kind == Kind::Complex { "Eq 2.2" } else { "Eq 2.3" };
            out.push(sampled(format!("sp/n={n}/underlined-form/{name}/k={k}"), anchor, samples, seed, |s| {
                let (r, w) = points(s, kind, nk);
                let z = s.circle();
                let inputs = json!({ "k": k, "r": ser_r(&r), "w": &w, "z": &z });
                check_underlined(kind, dim, k, &r, &w, &z).map_err(fail(inputs))
            }));
            for i in 1..=nk {
                out.push(sampled(format!("sp/n={n}/absorb-d/{name}/k={k}/i={i}"), "Eq 2.4", samples, seed, |s| {
                    let p = s.sphere(family(kind), false);
                    let z = s.circle();
                    let inputs = json!({ "k": k, "i": i, "point": &p, "z": &z });
                    check_eq_2_4(kind, dim, k, i, &p.r, &p.w, &z).map_err(fail(inputs))
                }));
            }
        }
    }
    for k in 0..4 * n {
        let nk = 4 * n - k;
        out.push(sampled(
            format!("sp/n={n}/block-product-as-printed/quaternionic/k={k}"),
            "Eq 2.1",
            samples,
            seed,
            |s| {
                let (r, w) = points(s, Kind::Quaternionic, nk);
                let z = s.circle();
                let inputs = json!({ "k": k, "s": ser_r(&r), "v": &w, "z": &z });
                check_quat_closed_printed(dim, k, &r, &w, &z).map_err(fail(inputs))
            },
        ));
    }
    out
}

pub fn commutation_rules(n: usize, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let dim = 4 * n + 1;
    let mut out = Vec::new();
    for rule in [Rule::ComplexFirst, Rule::ComplexLater, Rule::QuatFirst, Rule::QuatLater] {
        let kind = if matches!(rule, Rule::ComplexFirst | Rule::ComplexLater) { Kind::Complex } else { Kind::Quaternionic };
        let readings: &[Reading] =
            if kind == Kind::Quaternionic { &[Reading::Exact, Reading::AsPrinted] } else { &[Reading::Exact] };
        for k in (0..4 * n).filter(|&k| rule.applies_to(k)) {
            for i in 1..=4 * n - k {
                for &reading in readings {
                    let tag = if reading == Reading::AsPrinted { "commute-as-printed" } else { "commute" };
                    let id = format!("sp/n={n}/{tag}/{}/k={k}/i={i}", rule_name(rule));
                    out.push(sampled(id, "Eq 2.5", samples, seed, |s| {
                        let p = s.sphere(family(kind), false);
                        let (z, x) = (s.circle(), s.circle());
                        let inputs = json!({ "k": k, "i": i, "point": &p, "z": &z, "x": &x, "reading": reading });
                        check_eq_2_5(rule, reading, dim, k, i, &p.r, &p.w, &z, &x).map_err(fail(inputs))
                    }));
                }
            }
        }
    }
    out.push(sampled(format!("sp/n={n}/dbar-factorization"), "Eq 2.5", samples, seed, |s| {
        let x = s.circle();
        check_bar_d(dim, &x).map_err(fail(json!({ "x": &x })))
    }));
    out
}

fn lemma_err(inputs: serde_json::Value) -> impl FnOnce(LemmaError) -> SampleFailure {
    move |e| SampleFailure::new(inputs, e.to_string())
}

fn random_input(n: usize, s: &mut Sampler) -> LemmaInput {
    let mut blocks = |kind: Kind| -> (Vec<Vec<(Rational, Gauss)>>, Vec<Vec<UnitCircle>>) {
        (0..4 * n)
            .map(|k| {
                let pts = (0..4 * n - k).map(|_| s.sphere(family(kind), true)).map(|p| (p.r, p.w)).collect();
                let ph = (0..4 * n - k).map(|_| s.small_circle()).collect();
                (pts, ph)
            })
            .unzip()
    };
    let (x, xph) = blocks(Kind::Complex);
    let (y, yph) = blocks(Kind::Quaternionic);
    LemmaInput::for_cells(n, &x, &y, &xph, &yph)
}

pub fn normalization(n: usize, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let dim = 4 * n + 1;
    let mut out = Vec::new();
    for kind in [Kind::Complex, Kind::Quaternionic] {
        let readings: &[Reading] =
            if kind == Kind::Quaternionic { &[Reading::Exact, Reading::AsPrinted] } else { &[Reading::Exact] };
        for k in 0..4 * n {
            let nk = 4 * n - k;
            for &reading in readings {
                let tag = if reading == Reading::AsPrinted { "normalize-block-as-printed" } else { "normalize-block" };
                let id = format!("sp/n={n}/{tag}/{}/k={k}", kind_name(kind));
                out.push(sampled(id, "Lemma 2.1", samples, seed, |s| {
                    let (r, w) = points(s, kind, nk);
                    let z: Vec<UnitCircle> = (0..nk).map(|_| s.circle()).collect();
                    let inputs = json!({ "k": k, "r": ser_r(&r), "w": &w, "z": &z });
                    block_normalize_printed(kind, reading, dim, k, &r, &w, &z).map_err(fail(inputs))
                }));
            }
        }
    }
    out.push(sampled(format!("sp/n={n}/normalize-full"), "Lemma 2.1", samples, seed, |s| {
        let input = random_input(n, s);
        lemma21_normalize(&input).map(|_| ()).map_err(lemma_err(json!(&input)))
    }));
    out.push(sampled(format!("sp/n={n}/normalize-boundary"), "Lemma 2.1", samples, seed, |s| boundary_sample(n, s)));
    out
}

/// Puts a few factors on the boundary `r = 0`, with unit `w` drawn so that
/// the converting phase exists in `Q(i)`, converts, and checks that those
/// blocks become `R(0, 1)` or `R(0, j)` while the product is unchanged.
fn boundary_sample(n: usize, s: &mut Sampler) -> Result<(), SampleFailure> {
    let mut input = random_input(n, s);
    let count = input.factors.len();
    let mut picked: Vec<usize> = (0..3).map(|_| s.below(count)).collect();
    picked.sort_unstable();
    picked.dedup();
    for &j in &picked {
        let absorbed = absorbed_values(&input).map_err(lemma_err(json!(&input)))?;
        let f = &input.factors[j];
        let u = s.small_circle().pow(f.i as i64);
        let want = match f.kind {
            Kind::Complex => u.conj(),
            Kind::Quaternionic => u,
        };
        // absorbed[j] = f.w · (monomial), so this w makes the absorbed value `want`
        let mono = &absorbed[j] * &f.w.inv().expect("interior point has w != 0");
        let w = want.value() * &mono.inv().expect("unit monomial");
        input.factors[j].r = int(0);
        input.factors[j].w = w;
        input = convert_boundary_phases(&input).map_err(lemma_err(json!({ "input": &input, "boundary": &picked })))?;
    }
    let inputs = json!({ "input": &input, "boundary": &picked });
    let norm = lemma21_normalize(&input).map_err(lemma_err(inputs.clone()))?;
    for &j in &picked {
        if norm.blocks[j].w != Gauss::one() {
            return Err(SampleFailure::new(inputs, json!({ "unconverted": j, "w": &norm.blocks[j].w })));
        }
    }
    Ok(())
}

/// Every symplectic identity record for one `n`.
pub fn identity_records(n: usize, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let mut out = block_products(n, samples, seed);
    out.extend(commutation_rules(n, samples, seed));
    out.extend(normalization(n, samples, seed));
    out
}
