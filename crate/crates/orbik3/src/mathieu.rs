//! M12 from the generators A, B, C, D; the images of the orbifold
//! symmetries in M12 and M24; octad propagation and the mixing check.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{c24, domino_octads, octad_complete, octads, BinaryWord, TernaryCode};
use crate::error::GroupError;
use crate::niemeier::{project_to_m12, Generator};
use crate::perm::{PermGroup, Permutation};

pub const M12_GENERATORS: [(&str, &str); 4] = [
    ("A", "(1,6,5,4,10,9,12,7,11,3,2)"),
    ("B", "(1,4,6,12,2)(3,11,9,7,5)"),
    ("C", "(1,7)(2,5)(3,12)(4,9)(6,11)(8,10)"),
    ("D", "(1,2)(3,5)(4,12)(7,11)"),
];

/// Coordinates negated together with C.
pub const C_SIGN_FLIPS: [usize; 6] = [3, 5, 7, 9, 10, 11];

/// The dodecad `D`.
pub const DODECAD: [usize; 12] = [1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18, 23];

/// `RELABEL_D[k − 1]` is the label in `D` that carries the M12 label `k`.
pub const RELABEL_D: [usize; 12] = [12, 8, 18, 13, 2, 16, 3, 23, 1, 6, 4, 9];

/// Support of octad #28.
pub const OCTAD_28: [usize; 8] = [3, 5, 6, 9, 15, 19, 23, 24];

pub const M24_ORDER: u64 = 244_823_040;
pub const OCTAD_STABILIZER_ORDER: u64 = 322_560;

pub fn m12_generators() -> Vec<Permutation> {
    M12_GENERATORS.iter().map(|(_, s)| Permutation::parse(12, s).unwrap()).collect()
}

pub fn m12() -> PermGroup {
    PermGroup::new(12, &m12_generators()).expect("degree 12")
}

/// `Θ(g)` computed from the lifted automorphism of N.
pub fn theta(g: Generator) -> Permutation {
    project_to_m12(&g.lift()).expect("lifts respect the A2 blocks")
}

pub fn theta_group() -> PermGroup {
    let gens: Vec<Permutation> = Generator::ALL.iter().map(|&g| theta(g)).collect();
    PermGroup::new(12, &gens).unwrap()
}

/// Sign pattern `ε` (normalised to `ε_1 = +1`) such that `σ` with the
/// flips maps C12 to itself.
pub fn lift_to_c12_automorphism(code: &TernaryCode, sigma: &Permutation) -> Option<[i8; 12]> {
    (0u32..1 << 11).find_map(|mask| {
        let signs: [i8; 12] = std::array::from_fn(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 });
        code.is_signed_automorphism(sigma, &signs).then_some(signs)
    })
}

/// 1-based labels where the pattern is negative.
pub fn flipped(signs: &[i8; 12]) -> Vec<usize> {
    (0..12).filter(|&i| signs[i] < 0).map(|i| i + 1).collect()
}

fn mask(labels: &[usize]) -> u32 {
    labels.iter().fold(0, |m, &l| m | 1 << (l - 1))
}

fn labels(mask: u32) -> Vec<usize> {
    (1..=24).filter(|&l| mask >> (l - 1) & 1 == 1).collect()
}

/// A degree-12 permutation read on the labels of `D`.
pub fn relabel_to_d(sigma: &Permutation) -> HashMap<usize, usize> {
    (1..=12).map(|k| (RELABEL_D[k - 1], RELABEL_D[sigma.image_of(k) - 1])).collect()
}

/// Extends `σ ∈ M12` to M24 by octad propagation from its action on `D`.
pub fn extend_to_m24(sigma: &Permutation) -> Result<Permutation, GroupError> {
    let mut known: [Option<usize>; 24] = [None; 24];
    for (a, b) in relabel_to_d(sigma) {
        known[a - 1] = Some(b);
    }
    let list = domino_octads();
    let mut cand = [(1u32 << 24) - 1; 24];
    loop {
        let known_mask = (1..=24).filter(|&l| known[l - 1].is_some()).fold(0u32, |m, l| m | 1 << (l - 1));
        if known_mask == (1 << 24) - 1 {
            break;
        }
        let used = known.iter().flatten().fold(0u32, |m, &b| m | 1 << (b - 1));
        let mut progress = false;
        for (num, o) in list.iter().enumerate() {
            let inside = o.0 & known_mask;
            if inside.count_ones() < 5 || inside == o.0 {
                continue;
            }
            let imgs: Vec<usize> = labels(inside).iter().map(|&l| known[l - 1].unwrap()).collect();
            let q = octad_complete(&imgs).map_err(|_| GroupError::Contradiction(num + 1))?;
            if q.0 & mask(&imgs) != mask(&imgs) {
                return Err(GroupError::Contradiction(num + 1));
            }
            for l in labels(!known_mask & ((1 << 24) - 1)) {
                let bit = 1u32 << (l - 1);
                cand[l - 1] &= if o.0 & bit != 0 { q.0 } else { !q.0 };
                cand[l - 1] &= !used;
            }
        }
        for l in 1..=24 {
            if known[l - 1].is_none() {
                cand[l - 1] &= !used;
                match cand[l - 1].count_ones() {
                    0 => return Err(GroupError::Contradiction(0)),
                    1 => {
                        known[l - 1] = Some(cand[l - 1].trailing_zeros() as usize + 1);
                        progress = true;
                        break;
                    }
                    _ => {}
                }
            }
        }
        if !progress {
            return Err(GroupError::Stalled(known.iter().filter(|k| k.is_none()).count()));
        }
    }
    let images: Vec<usize> = known.iter().map(|k| k.unwrap() - 1).collect();
    let p = Permutation::from_images(images).map_err(|_| GroupError::Contradiction(0))?;
    if !c24().is_code_automorphism(&p)? {
        return Err(GroupError::NotAutomorphism);
    }
    if p.image_set(&DODECAD) != DODECAD.to_vec() || relabel_to_d(sigma).iter().any(|(&a, &b)| p.image_of(a) != b) {
        return Err(GroupError::NotAutomorphism);
    }
    Ok(p)
}

/// Stated images in M24.
pub fn stated_vartheta(g: Generator) -> &'static str {
    match g {
        Generator::Alpha1 => "(1,3,8)(2,23,16)(5,22,14)(10,20,21)(11,17,24)(12,13,18)",
        Generator::Alpha2 => "(1,23,12)(2,18,8)(3,16,13)(5,14,22)(7,15,19)(10,20,21)",
        Generator::Beta => "(1,8,18,12)(2,13,23,3)(5,10)(7,11,15,24)(14,21,22,20)(17,19)",
    }
}

pub fn vartheta(g: Generator) -> Result<Permutation, GroupError> {
    extend_to_m24(&theta(g))
}

/// Whether the image of `set` meets both `set` and its complement.
pub fn mixes(p: &Permutation, set: &[usize]) -> bool {
    let img = p.image_set(set);
    let inside = img.iter().filter(|x| set.contains(x)).count();
    inside > 0 && inside < set.len()
}

#[derive(Clone, Debug, Serialize)]
pub struct M12Report {
    pub order: String,
    pub theta_order: String,
    pub theta_members: Vec<bool>,
    pub theta_strings: Vec<String>,
    pub theta_match: Vec<bool>,
    pub sign_patterns: Vec<(String, Vec<usize>)>,
    pub signs_as_stated: bool,
}

impl M12Report {
    pub fn passed(&self) -> bool {
        self.order == "95040" && self.theta_order == "36" && self.theta_members.iter().all(|&b| b)
            && self.theta_match.iter().all(|&b| b) && self.signs_as_stated
    }
}

pub fn verify_m12(code: &TernaryCode) -> M12Report {
    let g = m12();
    let th = theta_group();
    let thetas: Vec<Permutation> = Generator::ALL.iter().map(|&x| theta(x)).collect();
    let sign_patterns: Vec<(String, Vec<usize>)> = M12_GENERATORS
        .iter()
        .zip(m12_generators())
        .map(|((n, _), p)| (n.to_string(), lift_to_c12_automorphism(code, &p).map(|s| flipped(&s)).unwrap_or(vec![0])))
        .collect();
    let signs_as_stated = sign_patterns
        .iter()
        .all(|(n, f)| if n == "C" { f == &C_SIGN_FLIPS.to_vec() } else { f.is_empty() });
    M12Report {
        order: g.order().to_string(),
        theta_order: th.order().to_string(),
        theta_members: thetas.iter().map(|t| g.contains(t)).collect(),
        theta_strings: thetas.iter().map(|t| t.to_string()).collect(),
        theta_match: Generator::ALL.iter().zip(&thetas).map(|(x, t)| t.to_string() == x.theta()).collect(),
        sign_patterns,
        signs_as_stated,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VarthetaEntry {
    pub generator: &'static str,
    pub image: Option<String>,
    pub matches_stated: bool,
    pub in_m24: bool,
    pub stabilizes_d: bool,
    pub mixes_octad_28: bool,
    pub octad_28_image: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct M24Report {
    pub dodecad_is_codeword: bool,
    pub complement: Vec<usize>,
    pub entries: Vec<VarthetaEntry>,
    pub group_order: usize,
    pub homomorphic: bool,
    pub identity_extends_to_identity: bool,
    pub note: &'static str,
}

impl M24Report {
    pub fn passed(&self) -> bool {
        self.dodecad_is_codeword
            && self.entries.iter().all(|e| e.matches_stated && e.in_m24 && e.stabilizes_d && e.mixes_octad_28)
            && self.group_order == 36
            && self.homomorphic
            && self.identity_extends_to_identity
    }
}

pub const GENERATION_NOTE: &str =
    "the stabilizer of octad #28 is maximal in M24, so any element of M24 that mixes it generates M24 together with it";

pub fn verify_m24() -> M24Report {
    let code = c24();
    let d = BinaryWord::from_support(&DODECAD).unwrap();
    let entries: Vec<VarthetaEntry> = Generator::ALL
        .iter()
        .map(|&g| {
            let p = vartheta(g).ok();
            VarthetaEntry {
                generator: g.name(),
                image: p.as_ref().map(|p| p.to_string()),
                matches_stated: p.as_ref().is_some_and(|p| p.to_string() == stated_vartheta(g)),
                in_m24: p.as_ref().is_some_and(|p| code.is_code_automorphism(p).unwrap_or(false)),
                stabilizes_d: p.as_ref().is_some_and(|p| p.image_set(&DODECAD) == DODECAD.to_vec()),
                mixes_octad_28: p.as_ref().is_some_and(|p| mixes(p, &OCTAD_28)),
                octad_28_image: p.as_ref().map(|p| p.image_set(&OCTAD_28)).unwrap_or_default(),
            }
        })
        .collect();
    let (group_order, homomorphic) = check_homomorphism();
    M24Report {
        dodecad_is_codeword: code.contains(&d),
        complement: labels(d.complement().0),
        entries,
        group_order,
        homomorphic,
        identity_extends_to_identity: extend_to_m24(&Permutation::identity(12)).is_ok_and(|p| p.is_identity()),
        note: GENERATION_NOTE,
    }
}

/// Walks the 36-element group along words in the generators, pairing each
/// Θ-image with the corresponding product of ϑ-images; every pair must be
/// consistent, a C24 automorphism, and restrict on `D` to the relabelled Θ-image.
pub fn check_homomorphism() -> (usize, bool) {
    let gens: Vec<(Permutation, Permutation)> = match Generator::ALL
        .iter()
        .map(|&g| vartheta(g).map(|v| (theta(g), v)))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(v) => v,
        Err(_) => return (0, false),
    };
    let mut map: HashMap<Permutation, Permutation> =
        HashMap::from([(Permutation::identity(12), Permutation::identity(24))]);
    let mut queue = vec![Permutation::identity(12)];
    let mut ok = true;
    while let Some(t) = queue.pop() {
        let v = map[&t].clone();
        for (gt, gv) in &gens {
            let (t2, v2) = (t.then(gt), v.then(gv));
            match map.get(&t2) {
                Some(old) => ok &= old == &v2,
                None => {
                    map.insert(t2.clone(), v2);
                    queue.push(t2);
                }
            }
        }
    }
    let code = c24();
    for (t, v) in &map {
        ok &= code.is_code_automorphism(v).unwrap_or(false);
        ok &= relabel_to_d(t).iter().all(|(&a, &b)| v.image_of(a) == b);
    }
    (map.len(), ok)
}

/// Five-point subsets of octads, keyed by bit mask.
fn five_point_index() -> HashMap<u32, u32> {
    let mut idx = HashMap::new();
    for o in octads() {
        let pts = labels(o.0);
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    let drop = mask(&[pts[a], pts[b], pts[c]]);
                    idx.insert(o.0 & !drop, o.0);
                }
            }
        }
    }
    idx
}

/// A random C24 automorphism, found depth first with octad pruning, whose
/// images satisfy `allowed(point, image)` (1-based labels).
pub fn random_code_automorphism(rng: &mut impl Rng, allowed: &impl Fn(usize, usize) -> bool) -> Option<Permutation> {
    let idx = five_point_index();
    let by_point: Vec<Vec<u32>> =
        (1..=24).map(|l| octads().iter().map(|o| o.0).filter(|o| o >> (l - 1) & 1 == 1).collect()).collect();
    let mut img = [0usize; 24];
    if dfs(0, &mut img, 0, 0, rng, allowed, &idx, &by_point) {
        Permutation::from_images(img.iter().map(|&x| x - 1).collect()).ok()
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    p: usize,
    img: &mut [usize; 24],
    assigned: u32,
    used: u32,
    rng: &mut impl Rng,
    allowed: &impl Fn(usize, usize) -> bool,
    idx: &HashMap<u32, u32>,
    by_point: &[Vec<u32>],
) -> bool {
    if p == 24 {
        return true;
    }
    let mut cands: Vec<usize> = (1..=24).filter(|&c| used >> (c - 1) & 1 == 0 && allowed(p + 1, c)).collect();
    cands.shuffle(rng);
    let assigned2 = assigned | 1 << p;
    for c in cands {
        img[p] = c;
        let consistent = by_point[p].iter().all(|&o| {
            let dom = o & assigned2;
            if dom.count_ones() < 5 {
                return true;
            }
            let im = labels(dom).iter().fold(0u32, |m, &l| m | 1 << (img[l - 1] - 1));
            let mut five = im;
            while five.count_ones() > 5 {
                five &= five - 1;
            }
            idx.get(&five).is_some_and(|q| q & im == im)
        });
        if consistent && dfs(p + 1, img, assigned2, used | 1 << (c - 1), rng, allowed, idx, by_point) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub stabilizer_generators: Vec<String>,
    pub stabilizer_order: String,
    pub combined_order: String,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.stabilizer_order == OCTAD_STABILIZER_ORDER.to_string() && self.combined_order == M24_ORDER.to_string()
    }
}

/// The full order check: random generators of the octad-#28 stabilizer
/// together with the ϑ-images generate a group of order |M24|.
pub fn extended_generation_check(seed: u64) -> Result<GenerationReport, GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o28 = mask(&OCTAD_28);
    let allowed = |p: usize, c: usize| (o28 >> (p - 1) & 1) == (o28 >> (c - 1) & 1);
    let mut gens: Vec<Permutation> = Vec::new();
    let target = BigInt::from(OCTAD_STABILIZER_ORDER);
    let mut h = PermGroup::new(24, &gens)?;
    for _ in 0..32 {
        if h.order() == target {
            break;
        }
        if let Some(p) = random_code_automorphism(&mut rng, &allowed) {
            gens.push(p);
            h = PermGroup::new(24, &gens)?;
        }
    }
    let mut all = gens.clone();
    for g in Generator::ALL {
        all.push(vartheta(g)?);
    }
    let full = PermGroup::new(24, &all)?;
    Ok(GenerationReport {
        stabilizer_generators: gens.iter().map(|p| p.to_string()).collect(),
        stabilizer_order: h.order().to_string(),
        combined_order: full.order().to_string(),
    })
}
