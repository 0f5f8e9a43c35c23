//! Acceptance criteria, one line each. Flags after `--`: `--extended`,
//! `--seed S`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orbik3::gluing::{extend_automorphism, glue, hyperbolic_example, minus_identity};
use orbik3::lattice::SublatticeHandle;
use orbik3::report::{run_suite, Status, SuiteOptions};
use orbik3::{mathieu, niemeier, orbifold, properties, symmetry, Rat};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(parts: &[(&str, bool)]) -> Outcome {
    let failed: Vec<&str> = parts.iter().filter(|p| !p.1).map(|p| p.0).collect();
    Outcome {
        ok: failed.is_empty(),
        detail: if failed.is_empty() { parts.iter().map(|p| p.0).collect::<Vec<_>>().join(", ") } else { format!("failed: {}", failed.join(", ")) },
    }
}

fn suite_outcome(name: &str, opts: &SuiteOptions) -> Outcome {
    let rep = run_suite(name, opts).expect("known suite");
    let failed: Vec<&str> = rep.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.check_id.as_str()).collect();
    let skipped = rep.checks.iter().filter(|c| c.status == Status::Skipped).count();
    Outcome {
        ok: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks, {skipped} skipped", rep.checks.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn lattice_invariants() -> Outcome {
    use orbifold::*;
    let k = build_k();
    let p = build_p();
    let gens: Vec<_> = torus_images().into_iter().map(|v| v.coords).collect();
    let idx = SublatticeHandle::from_ambient(&k, &gens).ok().flatten().and_then(|s| s.index().ok());
    let rows: Vec<_> = root_generators().iter().map(|v| p.int_coords(v).unwrap().unwrap()).collect();
    let pr = SublatticeHandle::new(&p, rows).ok().and_then(|s| s.index().ok());
    let r27 = Rat::from_integer(27.into());
    outcome(&[
        ("disc T = -243", torus_invariant_lattice().discriminant() == Rat::from_integer((-243).into())),
        ("|disc P| = 27", p.discriminant().abs() == r27),
        ("|disc K| = 27", k.discriminant().abs() == r27),
        ("|P/R| = 27", pr == Some(BigInt::from(27))),
        ("[K : T] = 3", idx == Some(BigInt::from(3))),
    ])
}

fn gluing() -> Outcome {
    let o = orbifold::orbifold();
    let h = o.h2x.classify().ok();
    let k3 = h.is_some_and(|c| c.even && c.unimodular) && o.h2x.rank() == 22;
    let n = niemeier::niemeier();
    let ng = niemeier::gluing_in_n();
    let rn = niemeier::verify_gluing_in_n(n, &ng).equals_n;
    let hyp = hyperbolic_example().ok().and_then(|ex| {
        let g = glue(&ex.lambda, &ex.v, &ex.glue).ok()?;
        let psi = extend_automorphism(&minus_identity(1), &g).ok()??;
        Some(g.embed_shared().ok()?.same_as(&ex.gamma11).ok()? && psi == minus_identity(1))
    });
    outcome(&[("K3 lattice even, |disc| 1, rank 22", k3), ("glue(P̃,K̃,γ̃) = N", rn), ("Γ^{1,1} round trip", hyp == Some(true))])
}

fn minimal_norms() -> Outcome {
    let mn = orbifold::verify_min_norm_in_p_dual(orbifold::orbifold());
    let roots = niemeier::niemeier().roots().len();
    outcome(&[("P* has no vectors of norm < 2", mn.below_two == 0 && mn.passed()), ("N has 72 roots", roots == 72)])
}

fn symmetries() -> Outcome {
    let o = orbifold::orbifold();
    let els = symmetry::group_elements();
    let b = symmetry::verify_symmetry(o, &symmetry::AffineSymmetry::beta());
    outcome(&[
        ("36 elements", els.len() == 36),
        ("faithful", symmetry::verify_faithfulness().passed()),
        ("all preserve Gram/P/K/glue", els.iter().all(|g| symmetry::verify_symmetry(o, g).passed())),
        ("β signs (+,-,+)", b.disc_signs == [Some(1), Some(-1), Some(1)]),
    ])
}

fn embedding() -> Outcome {
    let e = niemeier::embed_and_verify_iota(niemeier::niemeier());
    outcome(&[
        ("(-1)-isometry", e.isometry),
        ("ι(v1), ι(v2), ι(v3)", e.v_images.iter().all(|&b| b)),
        ("primitive", e.primitive),
        ("complement A2^3 on blocks 10-12", e.complement_is_blocks),
    ])
}

fn extended_e6() -> Outcome {
    let d = niemeier::extended_e6_checks();
    outcome(&[
        ("extended E6 Gram", d.e6_gram),
        ("v̂ identities", d.v1_identity && d.v2_identity && d.v3_identity),
        ("⟨β r, r⟩ = ±1/3 not integral", !d.beta_pairing_integral && (d.beta_pairing == "1/3" || d.beta_pairing == "-1/3")),
    ])
}

fn property_suites(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m12 = mathieu::m12_generators();
    outcome(&[
        ("homomorphy", properties::homomorphy(&mut rng, 500).is_ok()),
        ("S(5,8,24) uniqueness", properties::steiner(&mut rng, 10_000).is_ok()),
        ("elliptic transformation", properties::elliptic(4).is_ok()),
        ("SNF/discriminant", properties::snf_consistency(&mut rng, 30).is_ok()),
        ("order invariance", properties::order_invariance(&mut rng, 12, &m12, 10).map(|o| o == BigInt::from(95040)).unwrap_or(false)),
    ])
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let extended = args.iter().any(|a| a == "--extended");
    let seed = args
        .iter()
        .position(|a| a == "--seed")
        .and_then(|i| args.get(i + 1))
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let opts = SuiteOptions { order: 4, extended, seed, ..SuiteOptions::default() };

    type Criterion<'a> = (&'a str, u64, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("lattice invariants", 1, Box::new(lattice_invariants)),
        ("gluing", 1, Box::new(gluing)),
        ("minimal norms", 60, Box::new(minimal_norms)),
        ("symmetry group", 1, Box::new(symmetries)),
        ("embedding", 1, Box::new(embedding)),
        ("codes", 30, Box::new(|| suite_outcome("codes", &opts))),
        ("mathieu", 10, Box::new(|| suite_outcome("mathieu", &opts))),
        ("elliptic genus", 30, Box::new(|| suite_outcome("genus", &opts))),
        ("extended E6 configuration", 1, Box::new(extended_e6)),
        ("property suites", 60, Box::new(move || property_suites(seed))),
    ];

    let mut all_ok = true;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let t = start.elapsed();
        let in_time = t <= Duration::from_secs(*limit);
        let ok = o.ok && in_time;
        all_ok &= ok;
        let timing = if in_time { String::new() } else { format!(" (over the {limit} s limit)") };
        println!("criterion {:>2} {} {:<26} {:>8.3} s{timing}  {}", i + 1, if ok { "PASS" } else { "FAIL" }, name, t.as_secs_f64(), o.detail);
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
