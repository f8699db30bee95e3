//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::time::{Duration, Instant};

use geographer::{run_args, CertificateDocument, OpenDocument, VerifyDocument};
use geographer_core::circle_bundle::{
    b1_closed_form, bundle_b1, degeneracy_closed_form, degeneracy_oracle, lefschetz_pairing, nullity_closed_form,
    validate_euler_class, EulerClassSpec, EulerTag, PairingRules,
};
use geographer_core::fiber_sum::{fiber_sum_invariants, EllipticSurface, FiberSumSpec};
use geographer_core::geography::{
    admissible_triples, is_null_admissible, simply_connected_geography, Construction, Family,
};
use geographer_core::mapping_torus::{wang_cohomology, MappingTorus};
use geographer_core::surface::{bundle_monodromy, compose_word, intersection_form, HomologyClass, TwistLetter, TwistWord};
use geographer_core::verify::grid;
use geographer_core::{construct, realize, realize_null, BundleManifoldSpec, IntMatrix, KDotOmega, Kodaira, NullRealization, Nullity};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for t in admissible_triples(-80, 12) {
        let r = realize(t.a, t.b, t.c, None).map_err(|e| format!("{t}: {e}"))?;
        let c = &r.certificate;
        ensure((c.sigma, c.b1, c.degeneracy) == (t.a, t.b, t.c), || format!("{t}: certificate {:?}", r.certified_triple()))?;
        ensure(c.kappa == Kodaira::One, || format!("{t}: kappa {}", c.kappa))?;
        ensure(c.minimal, || format!("{t}: not minimal"))?;
        ensure(2 * c.chi + 3 * c.sigma == 0, || format!("{t}: 2chi+3sigma != 0"))?;
        if let Construction::BundleFamily { bundle, .. } = r.construction {
            let expected: &[EulerTag] =
                if t.b % 2 == 0 { &[EulerTag::Zero, EulerTag::One] } else { &[EulerTag::One, EulerTag::Two] };
            ensure(expected.contains(&bundle.e), || format!("{t}: tag {} breaks the parity split", bundle.e))?;
        }
        count += 1;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("{count} triples realized exactly with kappa = 1, minimal"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for p in grid(8) {
        let w = wang_cohomology(&MappingTorus::for_bundle(p.d, p.k, p.g).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let eu = validate_euler_class(&w, &EulerClassSpec::tagged(p.e), p.d, p.k).map_err(|e| e.to_string())?;
        let q = lefschetz_pairing(&w, &eu, PairingRules::default()).map_err(|e| e.to_string())?;
        let oracle = degeneracy_oracle(&q.matrix, bundle_b1(&w, &eu)).map_err(|e| e.to_string())?;
        let closed = if p.e == EulerTag::Zero { p.d } else { p.d + 1 };
        ensure(oracle as u32 == closed, || format!("{p:?}: rank route {oracle}, closed form {closed}"))?;
        count += 1;
    }
    within(start.elapsed(), Duration::from_secs(2))?;
    Ok(format!("{count} grid points, rank-based degeneracy = closed form"))
}

fn criterion_3() -> Check {
    let mut count = 0;
    for p in grid(8) {
        let w = wang_cohomology(&MappingTorus::for_bundle(p.d, p.k, p.g).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let eu = validate_euler_class(&w, &EulerClassSpec::tagged(p.e), p.d, p.k).map_err(|e| e.to_string())?;
        let gysin = bundle_b1(&w, &eu);
        let closed = (2 * p.k - p.d + if p.e == EulerTag::Zero { 2 } else { 1 }) as usize;
        ensure(gysin == closed, || format!("{p:?}: Gysin {gysin}, closed form {closed}"))?;
        count += 1;
    }
    Ok(format!("{count} grid points, Gysin b1 = 2k - d + (2 | 1)"))
}

fn criterion_4() -> Check {
    let mut count = 0;
    for p in grid(8) {
        let m = construct(&BundleManifoldSpec::new(p.d, p.k, p.g, p.e).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let rank = m.cohomology.pairing.matrix.rank().map_err(|e| e.to_string())?;
        let b1 = m.cohomology.b1;
        let deg = degeneracy_closed_form(p.d, p.k, p.e).map_err(|e| e.to_string())? as usize;
        ensure(rank % 2 == 0, || format!("{p:?}: odd rank {rank}"))?;
        ensure(rank == b1 - deg, || format!("{p:?}: rank {rank} != b1 {b1} - d {deg}"))?;
        count += 1;
    }
    Ok(format!("{count} pairing matrices with even rank = b1 - degeneracy"))
}

/// Rank of `M - I` restricted to handle `h`.
fn shifted_block_rank(m: &IntMatrix, h: usize) -> usize {
    let s = 2 * h;
    let rows = [[m[(s, s)] - 1, m[(s, s + 1)]], [m[(s + 1, s)], m[(s + 1, s + 1)] - 1]];
    IntMatrix::from_rows(&rows).unwrap().rank().unwrap()
}

fn criterion_5() -> Check {
    let mut count = 0;
    for g in 1..=8u32 {
        for k in 0..=g {
            for d in 0..=k {
                let m = compose_word(&bundle_monodromy(d, k, g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                let mat = m.matrix();
                let n = 2 * g as usize;
                let fixed = n - mat.minus_identity().unwrap().rank().unwrap();
                ensure(fixed == (2 * k - d) as usize, || format!("({d},{k},{g}): fixed dimension {fixed}"))?;
                // Block diagonal by handles.
                for r in 0..n {
                    for c in 0..n {
                        ensure(r / 2 == c / 2 || mat[(r, c)] == 0, || format!("({d},{k},{g}): couples handles at ({r},{c})"))?;
                    }
                }
                for h in 0..g as usize {
                    let i = h as u32 + 1;
                    let mut alpha = vec![0; n];
                    alpha[2 * h] = 1;
                    let mut beta = vec![0; n];
                    beta[2 * h + 1] = 1;
                    let ma = m.apply(&alpha).unwrap();
                    let mb = m.apply(&beta).unwrap();
                    if i <= d {
                        let mut sum = alpha.clone();
                        sum[2 * h + 1] = 1;
                        ensure(ma == sum && mb == beta, || format!("({d},{k},{g}): alpha_{i} -> {ma:?}, beta_{i} -> {mb:?}"))?;
                    } else if i <= k {
                        ensure(ma == alpha && mb == beta, || format!("({d},{k},{g}): block {i} not identity"))?;
                    } else {
                        ensure(shifted_block_rank(mat, h) == 2, || format!("({d},{k},{g}): block {i} has fixed vectors"))?;
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} monodromies: fixed dimension 2k - d, blocks act as required"))
}

fn bundle_b1_deg(d: u32, k: u32, g: u32, e: EulerTag) -> Result<(i64, i64), String> {
    let c = construct(&BundleManifoldSpec::new(d, k, g, e).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?
        .certificate;
    Ok((c.b1, c.degeneracy))
}

fn criterion_6() -> Check {
    let mut count = 0;
    for l in 1..=6u32 {
        for extra in 0..=1u32 {
            // b = 2l
            for i in 0..l {
                let g = (l - 1 + i).max(2) + extra;
                let got = bundle_b1_deg(2 * i, l - 1 + i, g, EulerTag::Zero)?;
                ensure(got == (2 * l as i64, 2 * i as i64), || format!("B0({i}), l={l}: {got:?}"))?;
                let g = (l + i).max(2) + extra;
                let got = bundle_b1_deg(2 * i + 1, l + i, g, EulerTag::One)?;
                let b1 = 2 * (l + i) as i64 - (2 * i + 1) as i64 + 1;
                ensure(b1 == 2 * l as i64, || format!("B1({i}) even: b1 formula"))?;
                ensure(got == (b1, 2 * (i as i64 + 1)), || format!("B1({i}), l={l}: {got:?}"))?;
                count += 2;
            }
            // b = 2l + 1
            for i in 1..=l {
                let g = (l + i).max(2) + extra;
                let got = bundle_b1_deg(2 * i, l + i, g, EulerTag::One)?;
                ensure(got == (2 * l as i64 + 1, 2 * i as i64 + 1), || format!("B1({i}) odd, l={l}: {got:?}"))?;
                count += 1;
            }
            for i in 0..l {
                let g = (l + i).max(2) + extra;
                let got = bundle_b1_deg(2 * i, l + i, g, EulerTag::Two)?;
                ensure(got == (2 * l as i64 + 1, 2 * i as i64 + 1), || format!("B2({i}), l={l}: {got:?}"))?;
                count += 1;
            }
        }
        // realize lands on the last even B1 for c = b.
        let r = realize(0, 2 * l as i64, 2 * l as i64, None).map_err(|e| e.to_string())?;
        let ok = matches!(r.construction, Construction::BundleFamily { family: Family::B1, index, bundle }
            if index == l - 1 && bundle.d == bundle.k);
        ensure(ok, || format!("(0,{},{}) chose {}", 2 * l, 2 * l, r.construction))?;
    }
    Ok(format!("{count} family members reproduce (b1, degeneracy)"))
}

fn criterion_7() -> Check {
    let mut count = 0;
    for n in 1..=10u32 {
        for g in 2..=6u32 {
            for k in 0..=g {
                for d in 0..=k {
                    let base = if n == 1 { EllipticSurface::Dolgachev { p: 2, q: 3 } } else { EllipticSurface::E { n } };
                    let spec = FiberSumSpec::new(base, d, k, g).map_err(|e| e.to_string())?;
                    let c = fiber_sum_invariants(&spec).map_err(|e| e.to_string())?;
                    let tag = format!("{spec}");
                    ensure(c.sigma == -8 * n as i64, || format!("{tag}: sigma {}", c.sigma))?;
                    ensure(c.b1 == (2 * k - d) as i64, || format!("{tag}: b1 {}", c.b1))?;
                    ensure(c.degeneracy == d as i64, || format!("{tag}: degeneracy {}", c.degeneracy))?;
                    ensure(2 * c.chi + 3 * c.sigma == 0, || format!("{tag}: 2chi+3sigma"))?;
                    let kw_ok = match (base, c.k_dot_omega) {
                        (EllipticSurface::E { n }, KDotOmega::TorusAreaMultiple(m)) => m == n as i64 - 2 + 2 * g as i64 && m > 0,
                        (EllipticSurface::Dolgachev { .. }, KDotOmega::PositiveByCitation) => true,
                        _ => false,
                    };
                    ensure(kw_ok, || format!("{tag}: K.omega {}", c.k_dot_omega))?;
                    ensure(c.kappa == Kodaira::One && c.minimal, || format!("{tag}: kappa/minimal"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} fiber sums: sigma = -8n, b1 = 2k - d, degeneracy = d, K.omega = n - 2 + 2g"))
}

fn criterion_8() -> Check {
    for g in 2..=8u32 {
        for (d, k, e, expected) in [
            (0, 0, EulerTag::Zero, 0),
            (1, 1, EulerTag::One, 2),
            (1, 1, EulerTag::Zero, 0),
            (2, 2, EulerTag::One, 3),
        ] {
            let closed = nullity_closed_form(d, k, e).map_err(|e| e.to_string())?;
            ensure(closed == expected, || format!("B({d},{k},{g};{e}): closed form {closed}"))?;
            let cert = construct(&BundleManifoldSpec::new(d, k, g, e).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                .certificate;
            ensure(cert.nullity == Nullity::Known(expected), || format!("B({d},{k},{g};{e}): certificate {}", cert.nullity))?;
        }
    }
    ensure(!is_null_admissible(0, 2, 1), || "(0,2,1) accepted".into())?;
    ensure(realize_null(0, 2, 1, None).is_err(), || "(0,2,1) realized".into())?;
    let open = realize_null(0, 3, 1, None).map_err(|e| e.to_string())?;
    ensure(matches!(open, NullRealization::Open(_)), || "(0,3,1) not open".into())?;
    Ok("four nullity data points hold for g = 2..8; (0,2,1) rejected; (0,3,1) open".into())
}

fn criterion_9() -> Check {
    for n in 1..=10i64 {
        let s = -8 * n;
        let r = simply_connected_geography(s).map_err(|e| format!("{s}: {e}"))?;
        ensure(r.certificate.b1 == 0 && r.certificate.sigma == s, || format!("{s}: {}", r.construction))?;
    }
    for s in [-4, -12, -20, -81, -1, 4, 8, 0] {
        ensure(simply_connected_geography(s).is_err(), || format!("{s} accepted"))?;
    }
    Ok("sigma = -8..-80 realized with b1 = 0; other signatures rejected".into())
}

fn random_word() -> impl Strategy<Value = TwistWord> {
    (1u32..=6).prop_flat_map(|genus| {
        let n = 2 * genus as usize;
        let letter = (0..n, 0..n, prop_oneof![Just(-1i64), Just(1)], -2i64..=2, prop_oneof![-2i64..=-1, 1i64..=2])
            .prop_map(move |(i, j, s, t, e)| {
                let mut v = vec![0; n];
                v[i] = s;
                if j != i {
                    v[j] = t;
                }
                TwistLetter::new(HomologyClass::new(v), e)
            });
        prop::collection::vec(letter, 0..8).prop_map(move |ls| TwistWord::new(genus, ls).unwrap())
    })
}

fn round_trip<T>(value: &T) -> Result<(), String>
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let json = serde_json::to_string(value).map_err(|e| e.to_string())?;
    let back: T = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure(&back == value, || format!("round trip changed {json}"))
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&random_word(), |w| {
            let m = compose_word(&w).unwrap();
            let j = intersection_form(w.genus).unwrap();
            let lhs = m.matrix().transpose().checked_mul(&j).unwrap().checked_mul(m.matrix()).unwrap();
            prop_assert_eq!(lhs, j);
            prop_assert_eq!(m.matrix().det().unwrap(), 1);
            Ok(())
        })
        .map_err(|e| format!("symplectic property: {e}"))?;

    let mut grid_points = 0;
    for p in grid(8) {
        let c = construct(&BundleManifoldSpec::new(p.d, p.k, p.g, p.e).unwrap()).map_err(|e| e.to_string())?.certificate;
        let n = match c.nullity {
            Nullity::Known(n) => i64::from(n),
            Nullity::Unknown => return Err(format!("{p:?}: unknown nullity")),
        };
        ensure(0 <= n && n <= c.degeneracy && c.degeneracy <= c.b1, || format!("{p:?}: bounds"))?;
        ensure(c.b1 as u32 == b1_closed_form(p.d, p.k, p.e).unwrap(), || format!("{p:?}: b1"))?;
        grid_points += 1;
    }

    // Every certificate the CLI can emit in the tested regions.
    let mut docs = 0;
    for t in admissible_triples(-80, 12) {
        round_trip(&CertificateDocument::from_recipe(&realize(t.a, t.b, t.c, None).unwrap()))?;
        docs += 1;
    }
    for p in grid(6) {
        let bundle = geographer_core::geography::BundleParams { d: p.d, k: p.k, g: p.g, e: p.e };
        round_trip(&CertificateDocument::from_construction(Construction::Bundle { bundle }).unwrap())?;
        docs += 1;
    }
    for (args, code) in [
        (vec!["realize", "0", "4", "4"], 0),
        (vec!["realize", "-16", "3", "1"], 0),
        (vec!["realize", "0", "3", "3", "--null"], 0),
        (vec!["invariants", "--fibersum", "2", "1", "2", "2"], 0),
        (vec!["invariants", "--dolgachev", "2", "3", "1", "2", "2"], 0),
    ] {
        let (_, o) = run_args(std::iter::once("geographer").chain(args.iter().copied()));
        ensure(o.code == code, || format!("{args:?}: exit {}", o.code))?;
        let doc: CertificateDocument = serde_json::from_str(&o.stdout).map_err(|e| e.to_string())?;
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        ensure(again == o.stdout, || format!("{args:?}: output not stable under round trip"))?;
        docs += 1;
    }
    let (_, o) = run_args(["geographer", "enumerate", "--sigma-min", "-16", "--b1-max", "4", "--format", "json"]);
    let list: Vec<CertificateDocument> = serde_json::from_str(&o.stdout).map_err(|e| e.to_string())?;
    ensure(serde_json::to_string_pretty(&list).unwrap() + "\n" == o.stdout, || "enumerate round trip".into())?;
    docs += list.len();
    let (_, o) = run_args(["geographer", "realize", "0", "3", "1", "--null"]);
    let open: OpenDocument = serde_json::from_str(&o.stdout).map_err(|e| e.to_string())?;
    round_trip(&open)?;
    let (_, o) = run_args(["geographer", "verify", "--grid-max", "3", "--format", "json"]);
    let v: VerifyDocument = serde_json::from_str(&o.stdout).map_err(|e| e.to_string())?;
    round_trip(&v)?;
    docs += 2;

    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("1000 random words symplectic; {grid_points} grid bounds; {docs} documents round-trip"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("realization grid, a in 0..-80, b <= 12", criterion_1),
        ("degeneracy: pairing rank vs closed form", criterion_2),
        ("Gysin b1 vs closed form", criterion_3),
        ("pairing rank even and equal to b1 - degeneracy", criterion_4),
        ("monodromy fixed subspace and handle blocks", criterion_5),
        ("named bundle families B0, B1, B2", criterion_6),
        ("fiber sum invariants", criterion_7),
        ("nullity data points and open case", criterion_8),
        ("simply connected geography", criterion_9),
        ("property suites and JSON round trip", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({why}; {t:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
