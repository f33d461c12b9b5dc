//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bsgroup::baumslag::{bs_equal, bs_normal_form, power_of_a, transport_exponent, BsPresentation};
use bsgroup::brunner::{
    ab_image, finite_quotient_scan_exhaustive, g_equal, g_is_identity, g_reduce, g_reduce_form,
    normalize_k_sign, verify_homomorphism, GPresentation, GroupMap,
};
use bsgroup::classify::{classify_pair, Condition, VerdictTag};
use bsgroup::homsynth::{
    generated_exponent_fixpoint, synth_epi_item3, synthesize, Direction, EpiRecipe, Synthesis,
};
use bsgroup::words::{Gen, GenWord};
use common::{affine_image, big, homs_into_sym, nonabelian, perm_image, random_word};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g(l: i64, m: i64, k: i64) -> GPresentation {
    GPresentation::new_signed(l, m, k).unwrap()
}

fn verified(map: &GroupMap) -> Result<(), String> {
    let v = verify_homomorphism(map);
    ensure(v.holds, || {
        format!(
            "{} -> {} (a -> {}, t -> {}) fails: relator maps to {}",
            map.source, map.target, map.image_a, map.image_t, v.reduced_image
        )
    })
}

fn recipe_verified(r: &EpiRecipe) -> Result<(), String> {
    verified(&r.to_map().map_err(|e| e.to_string())?)
}

fn c1_counterexample(epi_exponents: &mut Vec<(BigInt, BigInt, BigInt)>) -> Check {
    let (p1, p2) = (g(18, 2, 2), g(18, 2, 6));
    let v = classify_pair(&p1, &p2).map_err(|e| e.to_string())?;
    ensure(v.tag == VerdictTag::MutualEpiNotIso, || {
        format!("verdict {v}")
    })?;
    let (l, m, k1, k2) = (big(18), big(2), big(2), big(6));
    let fwd = synth_epi_item3(&l, &m, &k1, &k2, Direction::Forward).map_err(|e| e.to_string())?;
    let bwd = synth_epi_item3(&l, &m, &k1, &k2, Direction::Backward).map_err(|e| e.to_string())?;
    ensure(fwd.r == big(27) && fwd.p == 1, || {
        format!("forward recipe {fwd}")
    })?;
    ensure(bwd.r == big(3) && bwd.p == 1, || {
        format!("backward recipe {bwd}")
    })?;
    let fmap = fwd.to_map().map_err(|e| e.to_string())?;
    ensure(
        fmap.image_a == GenWord::a(27) && fmap.image_t == "b t".parse().unwrap(),
        || format!("forward map a -> {}, t -> {}", fmap.image_a, fmap.image_t),
    )?;
    recipe_verified(&fwd)?;
    recipe_verified(&bwd)?;
    for r in [&fwd, &bwd] {
        epi_exponents.push((r.l.clone(), r.m.clone(), r.r.clone()));
    }
    Ok(format!(
        "{v}; epimorphisms (r=27,p=1) and (r=3,p=1) verified"
    ))
}

fn c2_census_box(epi_exponents: &mut Vec<(BigInt, BigInt, BigInt)>) -> Check {
    const K: i64 = 12;
    let mut iso_pairs = 0usize;
    let mut epi_pairs = 0usize;
    let mut maps = 0usize;
    for abs_l in 2..=12i64 {
        for l in [abs_l, -abs_l] {
            for m in 1..abs_l {
                let pres: Vec<_> = (1..=K).map(|k| g(l, m, k)).collect();
                let n = pres.len();
                let mut iso = vec![vec![false; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        let v = classify_pair(&pres[i], &pres[j]).map_err(|e| e.to_string())?;
                        let w = classify_pair(&pres[j], &pres[i]).map_err(|e| e.to_string())?;
                        ensure(v.tag == w.tag && v.condition == w.condition, || {
                            format!("asymmetric: {} vs {}: {v} / {w}", pres[i], pres[j])
                        })?;
                        iso[i][j] = v.tag == VerdictTag::Isomorphic;
                        if i == j {
                            ensure(v.condition == Some(Condition::EqualK), || {
                                format!("{} not isomorphic to itself: {v}", pres[i])
                            })?;
                        }
                        if i >= j {
                            continue;
                        }
                        let s = synthesize(&pres[i], &pres[j]).map_err(|e| e.to_string())?;
                        match (v.tag, v.condition, &s) {
                            (
                                VerdictTag::Isomorphic,
                                Some(Condition::PowerRatio),
                                Synthesis::Isomorphisms { forward, inverse },
                            ) => {
                                verified(forward)?;
                                verified(inverse)?;
                                let round = forward
                                    .then(inverse)
                                    .map_err(|e| e.to_string())?
                                    .fixes_generators()
                                    && inverse
                                        .then(forward)
                                        .map_err(|e| e.to_string())?
                                        .fixes_generators();
                                ensure(round, || {
                                    format!("{} ~ {}: maps not inverse", pres[i], pres[j])
                                })?;
                                iso_pairs += 1;
                                maps += 2;
                            }
                            (
                                VerdictTag::Isomorphic,
                                Some(Condition::LNumberRatio),
                                Synthesis::Epimorphisms { forward, backward },
                            )
                            | (
                                VerdictTag::MutualEpiNotIso,
                                None,
                                Synthesis::Epimorphisms { forward, backward },
                            ) => {
                                for r in [forward, backward] {
                                    recipe_verified(r)?;
                                    epi_exponents.push((r.l.clone(), r.m.clone(), r.r.clone()));
                                }
                                if v.tag == VerdictTag::Isomorphic {
                                    iso_pairs += 1;
                                } else {
                                    epi_pairs += 1;
                                }
                                maps += 2;
                            }
                            (VerdictTag::Distinct, None, Synthesis::Nothing) => {}
                            (VerdictTag::Isomorphic, Some(Condition::EqualK), _) => {
                                return Err(format!(
                                    "{} vs {}: equal-k verdict for distinct k",
                                    pres[i], pres[j]
                                ))
                            }
                            _ => {
                                return Err(format!(
                                    "{} vs {}: verdict {v} with synthesis {s:?}",
                                    pres[i], pres[j]
                                ))
                            }
                        }
                    }
                }
                for i in 0..n {
                    for j in 0..n {
                        for h in 0..n {
                            ensure(!(iso[i][j] && iso[j][h]) || iso[i][h], || {
                                format!("not transitive: {} ~ {} ~ {}", pres[i], pres[j], pres[h])
                            })?;
                        }
                    }
                }
            }
        }
    }
    ensure(epi_pairs > 0, || {
        "no MutualEpiNotIso pair in the box".into()
    })?;
    Ok(format!(
        "{iso_pairs} isomorphic pairs, {epi_pairs} mutual-epi pairs, {maps} maps verified; symmetric and transitive"
    ))
}

fn c3_word_problem() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let gens = [Gen::A, Gen::B, Gen::T];
    let mut total = 0usize;
    let mut affine_pairs = 0usize;
    for (l, m, k) in [(2, 1, 1), (18, 2, 2), (12, 3, 3), (-4, 3, 2)] {
        let p = g(l, m, k);
        let base = BsPresentation::new(l, m).unwrap();
        let rel = p.relator();
        let base_rel = base.relator();
        // A few homomorphisms onto nonabelian images, found by brute force.
        let homs: Vec<_> = (2..=4)
            .flat_map(|n| homs_into_sym(l, m, k, n))
            .filter(|(a, t)| nonabelian(a, t))
            .take(8)
            .collect();
        for _ in 0..1000 {
            let w = random_word(&mut rng, &gens, 12, 30);
            let inv = w.invert();
            ensure(g_is_identity(&p, &w.multiply(&inv)), || {
                format!("{p}: w w^-1 != 1 for w = {w}")
            })?;
            ensure(g_is_identity(&p, &inv.multiply(&w)), || {
                format!("{p}: w^-1 w != 1 for w = {w}")
            })?;

            let u = random_word(&mut rng, &gens, 6, 30);
            let v = random_word(&mut rng, &gens, 6, 30);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            let prod = rel
                .pow(&big(e))
                .conjugate_by(&u)
                .multiply(&rel.conjugate_by(&v))
                .multiply(&rel.pow(&big(-e)).conjugate_by(&w));
            ensure(g_is_identity(&p, &prod), || {
                format!("{p}: relator conjugate product {prod} != 1")
            })?;

            let r1 = g_reduce(&p, &w);
            let r2 = g_reduce(&p, &r1);
            ensure(r1 == r2, || {
                format!("{p}: reduction not idempotent on {w}: {r1} then {r2}")
            })?;
            ensure(g_equal(&p, &w, &r1), || {
                format!("{p}: {w} not equal to its reduction")
            })?;

            let form = g_reduce_form(&p, &w);
            if !w.exponent_sum(Gen::T).is_zero() {
                ensure(form.t_length() > 0, || {
                    format!("{p}: t-sum nonzero but t-length 0 for {w}")
                })?;
            }
            if g_is_identity(&p, &w) {
                let (res, ts) = ab_image(&p, &w);
                ensure(res.is_zero() && ts.is_zero(), || {
                    format!("{p}: identity word {w} has abelian image")
                })?;
            }
            for (a, t) in &homs {
                ensure(perm_image(k, a, t, &w) == perm_image(k, a, t, &r1), || {
                    format!("{p}: {w} and its reduction {r1} differ in a finite quotient")
                })?;
            }

            // Base-group affine consistency on {a, b} words.
            let x = random_word(&mut rng, &[Gen::A, Gen::B], 12, 30);
            let nf = bs_normal_form(&base, &x).unwrap().to_word();
            ensure(affine_image(l, m, &x) == affine_image(l, m, &nf), || {
                format!("H({l},{m}): {x} and normal form {nf} have different affine images")
            })?;
            let c = random_word(&mut rng, &[Gen::A, Gen::B], 4, 30);
            let y = x.multiply(&base_rel.conjugate_by(&c));
            let eq = bs_equal(&base, &x, &y).unwrap();
            ensure(eq, || format!("H({l},{m}): {x} != {y}"))?;
            ensure(affine_image(l, m, &x) == affine_image(l, m, &y), || {
                format!("H({l},{m}): equal words {x}, {y} have different affine images")
            })?;
            let z = random_word(&mut rng, &[Gen::A, Gen::B], 3, 3);
            if bs_equal(&base, &x, &z).unwrap() {
                ensure(affine_image(l, m, &x) == affine_image(l, m, &z), || {
                    format!("H({l},{m}): equal words {x}, {z} have different affine images")
                })?;
            }
            affine_pairs += 2;
            total += 1;
        }
    }
    Ok(format!(
        "{total} words over 4 presentations, {affine_pairs} affine comparisons, zero violations"
    ))
}

fn c4_baumslag() -> Check {
    let p = g(2, 1, 1);
    let mut totals = Vec::new();
    for d in 1..=5 {
        let start = Instant::now();
        let r = finite_quotient_scan_exhaustive(&p, d).map_err(|e| e.to_string())?;
        ensure(r.all_cyclic, || {
            format!("degree {d}: noncyclic image {:?}", r.witness)
        })?;
        if d == 5 {
            let t = start.elapsed();
            ensure(t < Duration::from_secs(30), || {
                format!("degree 5 took {t:?}")
            })?;
        }
        totals.push(format!("S_{d}:{}", r.total_homs));
    }
    Ok(format!("all images cyclic ({})", totals.join(", ")))
}

fn c5_transport() -> Check {
    let mut checked = 0usize;
    for (l, m) in [(18, 2), (12, 3), (2, 1), (-4, 3)] {
        let pres = BsPresentation::new(l, m).unwrap();
        for p in -3i64..=3 {
            for r in (-200i64..=200).filter(|&r| r != 0) {
                let fast = transport_exponent(&pres, p, &big(r)).map_err(|e| e.to_string())?;
                let w = GenWord::b(-p)
                    .multiply(&GenWord::a(r))
                    .multiply(&GenWord::b(p));
                let slow = power_of_a(&pres, &w).map_err(|e| e.to_string())?;
                ensure(fast == slow, || {
                    format!(
                        "H({l},{m}), p = {p}, r = {r}: transport {fast:?}, normal form {slow:?}"
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases, zero disagreements"))
}

fn c6_fixpoint(epi_exponents: &[(BigInt, BigInt, BigInt)]) -> Check {
    let distinct: BTreeSet<_> = epi_exponents.iter().cloned().collect();
    ensure(!distinct.is_empty(), || {
        "no epimorphism exponents collected".into()
    })?;
    for (l, m, r) in &distinct {
        let fix = generated_exponent_fixpoint(l, m, r).map_err(|e| e.to_string())?;
        ensure(fix.is_one(), || {
            format!("l = {l}, m = {m}, r = {r}: fixpoint {fix}")
        })?;
    }
    let control =
        generated_exponent_fixpoint(&big(18), &big(2), &big(5)).map_err(|e| e.to_string())?;
    ensure(control == big(5), || {
        format!("control (18,2,5) gives {control}")
    })?;
    Ok(format!(
        "{} exponents reach 1; control (18,2,5) stays at 5",
        distinct.len()
    ))
}

fn c7_normalize() -> Check {
    let n = normalize_k_sign(big(18), big(2), big(-2)).map_err(|e| e.to_string())?;
    ensure(n.presentation == g(18, 2, 2), || {
        format!("normalized to {}", n.presentation)
    })?;
    verified(&n.forward)?;
    verified(&n.backward)?;
    let fb = n.forward.then(&n.backward).map_err(|e| e.to_string())?;
    let bf = n.backward.then(&n.forward).map_err(|e| e.to_string())?;
    ensure(fb.fixes_generators() && bf.fixes_generators(), || {
        "compositions move a generator".into()
    })?;
    Ok(format!(
        "{} -> {} both ways, compositions are the identity",
        n.original, n.presentation
    ))
}

fn main() -> ExitCode {
    let mut epi_exponents = Vec::new();
    let mut failures = 0;
    let mut report = |n: u32, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(lim)) if elapsed >= lim => {
                Err(format!("took {elapsed:.2?}, limit {lim:?}"))
            }
            (r, _) => r,
        };
        let limit = limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default();
        match result {
            Ok(msg) => println!("PASS {n} {name}: {msg} [{elapsed:.2?}{limit}]"),
            Err(msg) => {
                failures += 1;
                println!("FAIL {n} {name}: {msg} [{elapsed:.2?}{limit}]");
            }
        }
    };
    report(
        1,
        "mutual epimorphisms without isomorphism",
        Some(Duration::from_secs(1)),
        &mut || c1_counterexample(&mut epi_exponents),
    );
    let mut box_exponents = Vec::new();
    report(
        2,
        "classification soundness on the census box",
        Some(Duration::from_secs(60)),
        &mut || c2_census_box(&mut box_exponents),
    );
    report(3, "word problem properties", None, &mut c3_word_problem);
    report(
        4,
        "finite images of G(2,1;1) are cyclic",
        None,
        &mut c4_baumslag,
    );
    report(
        5,
        "exponent transport matches normal forms",
        None,
        &mut c5_transport,
    );
    epi_exponents.extend(box_exponents);
    report(6, "surjectivity fixpoint", None, &mut || {
        c6_fixpoint(&epi_exponents)
    });
    report(7, "k-sign normalization", None, &mut c7_normalize);
    if failures == 0 {
        println!("acceptance: all 7 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 7 criteria failed");
        ExitCode::FAILURE
    }
}
