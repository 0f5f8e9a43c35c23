//! Named verification suites and their reports.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{
    build_c12, c24, domino_number, octad_complete, mog_membership, verify_domino_list, BinaryWord, MogArray, ALL_ONES,
};
use crate::gluing::{extend_automorphism, glue, hyperbolic_example, minus_identity};
use crate::lattice::SublatticeHandle;
use crate::scalar::mod_rational;
use crate::{genus, mathieu, niemeier, orbifold, symmetry};

pub const SCHEMA: &str = "orbik3.report/1";

pub const SUITES: [&str; 8] = ["lattices", "gluing", "symmetries", "codes", "niemeier", "mathieu", "genus", "all"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check_id: String,
    /// Short description of the object checked.
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub suite: String,
    pub version: &'static str,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} (orbik3 {})\n", self.suite, self.version);
        for c in &self.checks {
            s.push_str(&format!("{:<34} {} {}\n", c.check_id, c.detail, c.status));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        s.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        s
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Truncation order of the genus series.
    pub order: i64,
    pub extended: bool,
    pub seed: u64,
    pub random_words: usize,
    pub steiner_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { order: 4, extended: false, seed: 0, random_words: 10_000, steiner_samples: 10_000 }
    }
}

#[derive(Debug)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown suite '{}' (expected one of {})", self.0, SUITES.join(", "))
    }
}

impl std::error::Error for UnknownSuite {}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, id: &str, anchor: &str, ok: bool, detail: impl Into<String>, witness: impl FnOnce() -> Value) {
        self.0.push(Check {
            check_id: id.to_string(),
            anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witness: if ok { None } else { Some(witness()) },
        });
    }

    fn skip(&mut self, id: &str, anchor: &str, detail: &str) {
        self.0.push(Check {
            check_id: id.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            detail: detail.to_string(),
            witness: None,
        });
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<VerificationReport, UnknownSuite> {
    let mut c = Checks(Vec::new());
    match name {
        "lattices" => lattices(&mut c, opts),
        "gluing" => gluing(&mut c),
        "symmetries" => symmetries(&mut c),
        "codes" => codes(&mut c, opts),
        "niemeier" => niemeier_suite(&mut c),
        "mathieu" => mathieu_suite(&mut c, opts),
        "genus" => genus_suite(&mut c, opts),
        "all" => {
            lattices(&mut c, opts);
            gluing(&mut c);
            symmetries(&mut c);
            codes(&mut c, opts);
            niemeier_suite(&mut c);
            mathieu_suite(&mut c, opts);
            genus_suite(&mut c, opts);
        }
        other => return Err(UnknownSuite(other.to_string())),
    }
    Ok(VerificationReport {
        schema: SCHEMA,
        suite: name.to_string(),
        version: env!("CARGO_PKG_VERSION"),
        checks: c.0,
        wall_time_ms: None,
    })
}

fn lattices(c: &mut Checks, opts: &SuiteOptions) {
    use orbifold::*;
    let t = torus_invariant_lattice();
    let d = t.discriminant();
    c.push("lattices.torus_image_disc", "pushed-forward invariant torus lattice", d == crate::Rat::from_integer((-243).into()), format!("disc: {d}"), || json!(d.to_string()));

    let k = build_k();
    let gens: Vec<_> = torus_images().into_iter().map(|v| v.coords).collect();
    let idx = SublatticeHandle::from_ambient(&k, &gens).ok().flatten().and_then(|s| s.index().ok());
    c.push("lattices.torus_image_index", "index of the torus image in K", idx == Some(BigInt::from(3)), format!("index: {}", idx.as_ref().map(|i| i.to_string()).unwrap_or("-".into())), || json!(null));

    let p = build_p();
    let r = build_r();
    for (id, name, l) in [("lattices.p_disc", "lattice P", &p), ("lattices.k_disc", "lattice K", &k)] {
        let d = l.discriminant().abs();
        c.push(id, name, d == crate::Rat::from_integer(27.into()) && l.is_even(), format!("|disc|: {d}, rank {}", l.rank()), || json!(d.to_string()));
    }
    let rows: Vec<_> = root_generators().iter().map(|v| p.int_coords(v).unwrap().unwrap()).collect();
    let pr = SublatticeHandle::new(&p, rows).ok().and_then(|s| s.index().ok());
    c.push("lattices.p_over_r", "root sublattice R of P", pr == Some(BigInt::from(27)), format!("|P/R|: {}", pr.map(|i| i.to_string()).unwrap_or("-".into())), || json!(null));

    let dp = p_discriminant(&p);
    let dk = k_discriminant(&k);
    let qp: Vec<String> = dp.q_values.iter().map(|x| mod_rational(x, 2).to_string()).collect();
    let qk: Vec<String> = dk.q_values.iter().map(|x| mod_rational(x, 2).to_string()).collect();
    c.push("lattices.disc_forms", "discriminant forms of P and K", qp == ["2/3"; 3] && qk == ["4/3"; 3], format!("q_P: {qp:?}, q_K: {qk:?}"), || json!({"q_p": qp, "q_k": qk}));

    let snf_ok = [&p, &k, &r, &t]
        .iter()
        .all(|l| l.discriminant_group().map(|g| g.order() == l.discriminant().abs().to_integer()).unwrap_or(false));
    c.push("lattices.snf_consistency", "discriminant groups via Smith form", snf_ok, "|L*/L| = |disc L| for T, K, R, P".to_string(), || json!(null));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(2));
    let sub = crate::properties::snf_consistency(&mut rng, 30);
    c.push("lattices.random_sublattices", "Smith form on sampled sublattices", sub.is_ok(), "30 sampled sublattices of T, K, P: |L*/L| = |disc L|·index²".to_string(), || json!(sub.err()));

    let o = orbifold();
    let mn = verify_min_norm_in_p_dual(o);
    c.push("lattices.p_dual_min_norm", "minimal norm of P*", mn.passed(), format!("below 2: {}, norm 2: {} ({} in R, {} outside P)", mn.below_two, mn.norm_two, mn.norm_two_in_r, mn.norm_two_outside_p), || to_value(&format!("{mn:?}")));
}

fn gluing(c: &mut Checks) {
    use orbifold::*;
    let o = orbifold();
    let cl = o.h2x.classify();
    let ok = cl.as_ref().is_ok_and(|x| x.even && x.unimodular && x.signature == (3, 19)) && o.h2x.rank() == 22;
    c.push("gluing.k3_lattice", "gluing of K and P into the K3 lattice", ok, format!("rank {}, {:?}", o.h2x.rank(), cl.map(|x| (x.even, x.unimodular, x.signature)).ok()), || json!(null));
    c.push("gluing.form_compatible", "glue map between K and P", o.glued.glue.check_compatible().unwrap_or(false), "q_K = −q_P∘γ".to_string(), || json!(o.glued.glue.form_violation()));
    let gl = verify_gluelist(o);
    c.push("gluing.glue_vectors", "list of glue vectors", gl.passed(), format!("members: {}/{}", gl.members, gl.total), || to_value(&format!("{gl:?}")));
    let comp = k_in_h2x(o).orthogonal_complement().and_then(|s| s.lattice()).map(|l| l.same_as(&p_in_h2(o)).unwrap_or(false));
    c.push("gluing.complement_of_k", "orthogonal complement of K", comp.unwrap_or(false), "K^⊥ = P".to_string(), || json!(null));

    let hyp = hyperbolic_example().ok().and_then(|ex| {
        let g = glue(&ex.lambda, &ex.v, &ex.glue).ok()?;
        let e = g.embed_shared().ok()?;
        let psi = extend_automorphism(&minus_identity(1), &g).ok()??;
        Some(e.same_as(&ex.gamma11).ok()? && psi == minus_identity(1))
    });
    c.push("gluing.hyperbolic_example", "hyperbolic plane worked example", hyp == Some(true), "Γ^{1,1} round trip, −id extends to −id".to_string(), || json!(null));

    let n = niemeier::niemeier();
    let ng = niemeier::gluing_in_n();
    let rep = niemeier::verify_gluing_in_n(n, &ng);
    c.push("gluing.niemeier_from_p_k", "gluing in the Niemeier lattice", rep.equals_n && rep.compatible, "glue(P̃, K̃, γ̃) = N".to_string(), || to_value(&rep));
}

fn symmetries(c: &mut Checks) {
    use symmetry::*;
    let o = orbifold::orbifold();
    let els = group_elements();
    c.push("symmetries.group_order", "symmetry group of the orbifold", els.len() == 36, format!("elements: {}", els.len()), || json!(els.len()));
    let f = verify_faithfulness();
    c.push("symmetries.faithful", "action on F3²", f.passed(), "faithful and homomorphic".to_string(), || to_value(&format!("{f:?}")));
    let bad: Vec<String> = els.iter().filter(|g| !verify_symmetry(o, g).passed()).map(|g| g.to_string()).collect();
    c.push("symmetries.preservation", "induced lattice automorphisms", bad.is_empty(), "Gram, P, K and glue preserved by all 36".to_string(), || json!(bad));
    let b = verify_symmetry(o, &AffineSymmetry::beta());
    let signs: Vec<String> = b.disc_signs.iter().map(|s| s.map(|x| if x > 0 { "+" } else { "-" }).unwrap_or("?").to_string()).collect();
    c.push("symmetries.beta_disc_signs", "rotation on the discriminant group", signs == ["+", "-", "+"], format!("signs: ({})", signs.join(",")), || json!(signs));
    let s = verify_sigma_perp_roots(o);
    c.push("symmetries.sigma_perp_roots", "roots orthogonal to the invariant sublattice", s.passed(), format!("rank {}, roots {}", s.rank, s.roots), || to_value(&format!("{s:?}")));
}

fn codes(c: &mut Checks, opts: &SuiteOptions) {
    let c12 = build_c12();
    c.push("codes.c12", "extended ternary Golay code", c12.size() == 729 && c12.min_weight() == 6, format!("size {}, min weight {}", c12.size(), c12.min_weight()), || json!(null));
    let code = c24();
    let e = code.weight_enumerator();
    let w8 = e.get(&8).copied().unwrap_or(0);
    let all: Vec<usize> = e.values().copied().collect();
    c.push("codes.weight_enumerator", "extended binary Golay code", all == [1, 759, 2576, 759, 1], format!("weights: {all:?}"), || json!(all));
    c.push("codes.octad_count", "octads", w8 == 759, format!("weight-8 count: {w8}"), || json!(w8));

    let words_ok = code.words().all(|w| mog_membership(&MogArray::from_word(&w)));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bad = None;
    for _ in 0..opts.random_words {
        let w = BinaryWord(rng.gen::<u32>() & ALL_ONES);
        if mog_membership(&MogArray::from_word(&w)) != code.contains(&w) {
            bad = Some(w);
            break;
        }
    }
    c.push("codes.mog_membership", "hexacode membership test", words_ok && bad.is_none(), format!("4096 codewords + {} random words", opts.random_words), || json!(bad.map(|w| w.to_hex())));

    let d = verify_domino_list();
    c.push("codes.domino_list", "numbered octad list", d.passed(), format!("{} listed octads are codewords", d.octads), || json!(d.failures));

    let known = [2, 4, 6, 8, 9, 18];
    let o = octad_complete(&known).ok();
    let num = o.and_then(|o| domino_number(&o));
    let rest: Vec<usize> = o.map(|o| o.support().into_iter().filter(|l| !known.contains(l)).collect()).unwrap_or_default();
    c.push("codes.octad_tool", "octad completion", num == Some(5) && rest == [11, 17], format!("{{2,4,6,8,9,18}} → #{}, remainder {rest:?}", num.unwrap_or(0)), || json!(rest));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let mut failures = 0;
    for _ in 0..opts.steiner_samples {
        let mut pts = HashSet::new();
        while pts.len() < 5 {
            pts.insert(rng.gen_range(1..=24usize));
        }
        let pts: Vec<usize> = pts.into_iter().collect();
        let unique = crate::codes::octads().iter().filter(|w| pts.iter().all(|&p| w.has(p))).count() == 1;
        failures += (!unique) as usize;
    }
    c.push("codes.steiner_system", "S(5,8,24)", failures == 0, format!("{} sampled 5-sets lie in one octad", opts.steiner_samples), || json!(failures));
}

fn niemeier_suite(c: &mut Checks) {
    use niemeier::*;
    let n = niemeier();
    let r = verify_n(n);
    c.push("niemeier.lattice", "Niemeier lattice of type A2^12", r.passed(), format!("even {}, |disc| {}, ⟨w1,w1⟩ {}, norm-2 count: {}", r.even, r.abs_disc, r.w1_norm, r.roots), || to_value(&r));
    let e = embed_and_verify_iota(n);
    c.push("niemeier.embedding", "embedding of P(−1)", e.passed(), "isometry, v-images, primitive, complement A2^3".to_string(), || to_value(&e));
    let ng = gluing_in_n();
    let g = verify_gluing_in_n(n, &ng);
    c.push("niemeier.glue_certificates", "gluing isomorphism in N", g.passed(), format!("q_P̃ {:?}, q_K̃ {:?}", g.q_p, g.q_k), || to_value(&g));
    for gen in Generator::ALL {
        let l = lift_symmetry(n, gen);
        c.push(&format!("niemeier.lift_{}", gen.name()), "lifted automorphism of N", l.passed(), format!("Θ = {}", l.theta), || to_value(&l));
    }
    let lg = verify_lift_group();
    c.push("niemeier.lift_group", "lifted symmetry group", lg.passed(), format!("order {}", lg.order), || to_value(&lg));
    let x = verify_beta_extension(&ng);
    c.push("niemeier.beta_extension", "extension across the gluing", x.passed(), "ψ swaps Ẽ12^(1), Ẽ12^(2)".to_string(), || to_value(&x));
    let d = extended_e6_checks();
    c.push("niemeier.extended_e6", "extended E6 configuration in P*(−1)", d.passed(), format!("⟨β r, r⟩ = {}", d.beta_pairing), || to_value(&d));
}

fn mathieu_suite(c: &mut Checks, opts: &SuiteOptions) {
    use mathieu::*;
    let r = verify_m12(&build_c12());
    c.push("mathieu.m12_order", "M12 from A, B, C, D", r.order == "95040", format!("order: {}", r.order), || to_value(&r));
    c.push("mathieu.theta_order", "image of the symmetry group in M12", r.theta_order == "36" && r.theta_members.iter().all(|&b| b), format!("order: {}", r.theta_order), || to_value(&r));
    c.push("mathieu.theta_images", "block permutations", r.theta_match.iter().all(|&b| b), r.theta_strings.join(" "), || to_value(&r.theta_strings));
    c.push("mathieu.c12_signs", "sign flips lifting to Aut(C12)", r.signs_as_stated, format!("{:?}", r.sign_patterns), || to_value(&r.sign_patterns));
    let m = verify_m24();
    for e in &m.entries {
        c.push(&format!("mathieu.vartheta_{}", e.generator), "image in M24", e.matches_stated && e.in_m24 && e.stabilizes_d, e.image.clone().unwrap_or_default(), || to_value(e));
        c.push(&format!("mathieu.mixing_{}", e.generator), "octad #28 mixing", e.mixes_octad_28, format!("#28 ↦ {:?}", e.octad_28_image), || to_value(e));
    }
    c.push("mathieu.vartheta_group", "image group in M24", m.group_order == 36 && m.homomorphic && m.dodecad_is_codeword, format!("order {}", m.group_order), || to_value(&m));
    if opts.extended {
        match extended_generation_check(opts.seed) {
            Ok(g) => c.push("mathieu.m24_generation", "generation of M24", g.passed(), format!("order: {}", g.combined_order), || to_value(&g)),
            Err(e) => c.push("mathieu.m24_generation", "generation of M24", false, e.to_string(), || json!(null)),
        }
    } else {
        c.skip("mathieu.m24_generation", "generation of M24", "run with --extended");
    }
}

fn genus_suite(c: &mut Checks, opts: &SuiteOptions) {
    let rep = match genus::verify_genus(opts.order) {
        Ok(r) => r,
        Err(e) => {
            c.push("genus.series", "elliptic genus", false, e.to_string(), || json!(null));
            return;
        }
    };
    c.push("genus.q0", "K3 elliptic genus expansion", rep.q0_matches, format!("q^0 coefficient: {}", rep.q0), || json!(rep.q0));
    if opts.order >= 1 {
        c.push("genus.q1", "K3 elliptic genus expansion", rep.q1_matches, format!("q^1 coefficient: {}", rep.q1), || json!(rep.q1));
    } else {
        c.skip("genus.q1", "K3 elliptic genus expansion", "order < 1");
    }
    c.push("genus.orbifold_equals_k3", "sector sum of the Z3 orbifold", rep.difference_vanishes, format!("difference vanishes through q^{}", opts.order), || json!(null));
    c.push("genus.integral_even", "coefficients", rep.integral && rep.even, "integral and even in z".to_string(), || json!(null));
    c.push("genus.elliptic", "index-1 elliptic property", rep.elliptic_pairs.is_some(), format!("{} coefficient pairs", rep.elliptic_pairs.unwrap_or(0)), || json!(null));
    c.push("genus.sectors_at_zero", "twisted and projected sectors at z = 0", rep.sector_values_at_zero.iter().all(|s| s == "9"), format!("{:?}", rep.sector_values_at_zero), || json!(rep.sector_values_at_zero));
    match &rep.specializations {
        Some(s) => {
            c.push("genus.euler", "Euler characteristic", s.at_zero == "24", format!("E(τ,0) = {}", s.at_zero), || to_value(s));
            c.push("genus.signature", "signature", s.at_half == "16" && s.signature == "-16", format!("E(τ,1/2)|q^0 = {}, signature {}", s.at_half, s.signature), || to_value(s));
            c.push("genus.holomorphic_euler", "holomorphic Euler characteristic", s.at_half_tau == "-2" && s.holomorphic_euler == "2", format!("q^(1/2)E(τ,(τ+1)/2)|q^0 = {}, χ = {}", s.at_half_tau, s.holomorphic_euler), || to_value(s));
        }
        None => c.skip("genus.specializations", "specializations", "order < 1"),
    }
}

pub const EXPORT_LATTICES: [&str; 8] = ["torus", "r", "p", "p_dual", "k", "h2x", "glued", "niemeier"];

fn p_labels() -> Vec<String> {
    orbifold::h2_labels().split_off(4)
}

/// JSON document of a named lattice with its coordinate labels.
pub fn export_lattice(name: &str) -> Option<Value> {
    use orbifold::*;
    let kappa: Vec<String> = (1..=4).map(|i| format!("κ{i}")).collect();
    let (doc, labels) = match name {
        "torus" => (to_value(&torus_invariant_lattice().to_doc()), kappa),
        "r" => (to_value(&build_r().to_doc()), p_labels()),
        "p" => (to_value(&build_p().to_doc()), p_labels()),
        "p_dual" => (to_value(&build_p_dual().to_doc()), p_labels()),
        "k" => (to_value(&build_k().to_doc()), kappa),
        "h2x" => (to_value(&orbifold().h2x.to_doc()), h2_labels()),
        "glued" => (to_value(&orbifold().glued.to_doc()), h2_labels()),
        "niemeier" => {
            let labels = (1..=12).flat_map(|j| (1..=2).map(move |l| format!("Ẽ{j}^({l})"))).collect();
            (to_value(&niemeier::niemeier().lattice.to_doc()), labels)
        }
        _ => return None,
    };
    Some(json!({ "lattice": doc, "labels": labels }))
}

/// Coefficient table of the orbifold elliptic genus: entries
/// `[q-exponent, y-exponent, coefficient]` with exponents as `"a/b"`.
pub fn export_series(order: i64) -> Result<Value, crate::error::SeriesError> {
    let s = genus::orbifold_genus(order)?;
    let table = genus::integer_table(&s).ok_or(crate::error::SeriesError::NotRational)?;
    let frac = |n: i64, d: i64| crate::scalar::rat_to_string(&crate::Rat::new(n.into(), d.into()));
    let rows: Vec<Value> = table.iter().map(|(&(q, y), c)| json!([frac(q, 24), frac(y, 2), c])).collect();
    Ok(json!({ "series": "orbifold_elliptic_genus", "order": order, "coefficients": rows }))
}
