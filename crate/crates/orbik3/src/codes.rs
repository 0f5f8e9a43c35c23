//! The extended ternary Golay code C12, the extended binary Golay code C24,
//! the MOG and the hexacode.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::CodeError;
use crate::perm::Permutation;

/// A word of F3^12 with entries in `{0, 1, −1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryWord(pub [i8; 12]);

fn f3(x: i8) -> i8 {
    match x.rem_euclid(3) {
        2 => -1,
        r => r,
    }
}

impl TernaryWord {
    pub fn zero() -> Self {
        TernaryWord([0; 12])
    }

    pub fn add(&self, o: &Self) -> Self {
        TernaryWord(std::array::from_fn(|i| f3(self.0[i] + o.0[i])))
    }

    pub fn scale(&self, c: i8) -> Self {
        TernaryWord(std::array::from_fn(|i| f3(self.0[i] * c)))
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// Coordinate `i` moves to `σ(i)` and is multiplied by `signs[i]`.
    pub fn permute(&self, sigma: &Permutation, signs: &[i8; 12]) -> Self {
        let mut out = [0; 12];
        for i in 0..12 {
            out[sigma.apply(i)] = f3(self.0[i] * signs[i]);
        }
        TernaryWord(out)
    }

    pub fn parse(s: &str) -> Result<Self, CodeError> {
        let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cs.len() != 12 {
            return Err(CodeError::Length { expected: 12, found: cs.len() });
        }
        let mut w = [0; 12];
        for (i, c) in cs.iter().enumerate() {
            w[i] = match c {
                '0' => 0,
                '+' => 1,
                '-' => -1,
                _ => return Err(CodeError::Syntax(s.to_string())),
            };
        }
        Ok(TernaryWord(w))
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            f.write_str(match x {
                0 => "0",
                1 => "+",
                _ => "-",
            })?;
        }
        Ok(())
    }
}

/// Rows of the C12 generator matrix.
pub const C12_GENERATORS: [&str; 6] = [
    "0+++++ +00000",
    "-0+--+ 0+0000",
    "-+0+-- 00+000",
    "--+0+- 000+00",
    "---+0+ 0000+0",
    "-+--+0 00000+",
];

#[derive(Clone, Debug)]
pub struct TernaryCode {
    pub generators: Vec<TernaryWord>,
    words: HashSet<TernaryWord>,
}

impl TernaryCode {
    pub fn span(generators: Vec<TernaryWord>) -> Self {
        let mut words = HashSet::from([TernaryWord::zero()]);
        for g in &generators {
            let cur: Vec<TernaryWord> = words.iter().copied().collect();
            for w in cur {
                words.insert(w.add(g));
                words.insert(w.add(&g.scale(-1)));
            }
        }
        TernaryCode { generators, words }
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, w: &TernaryWord) -> bool {
        self.words.contains(w)
    }

    pub fn words(&self) -> Vec<TernaryWord> {
        let mut v: Vec<_> = self.words.iter().copied().collect();
        v.sort();
        v
    }

    pub fn min_weight(&self) -> usize {
        self.words.iter().map(|w| w.weight()).filter(|&w| w > 0).min().unwrap_or(0)
    }

    /// Whether `σ` with the sign pattern maps the code to itself.
    pub fn is_signed_automorphism(&self, sigma: &Permutation, signs: &[i8; 12]) -> bool {
        sigma.degree() == 12 && self.generators.iter().all(|g| self.contains(&g.permute(sigma, signs)))
    }
}

pub fn build_c12() -> TernaryCode {
    TernaryCode::span(C12_GENERATORS.iter().map(|s| TernaryWord::parse(s).unwrap()).collect())
}

/// A word of F2^24; bit `i − 1` is the coordinate labelled `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BinaryWord(pub u32);

pub const ALL_ONES: u32 = (1 << 24) - 1;

impl BinaryWord {
    pub fn from_support(labels: &[usize]) -> Result<Self, CodeError> {
        let mut w = 0u32;
        for &l in labels {
            if l == 0 || l > 24 {
                return Err(CodeError::Label(l));
            }
            w |= 1 << (l - 1);
        }
        Ok(BinaryWord(w))
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=24).filter(|&l| self.has(l)).collect()
    }

    pub fn has(&self, label: usize) -> bool {
        self.0 >> (label - 1) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn complement(&self) -> Self {
        BinaryWord(!self.0 & ALL_ONES)
    }

    pub fn permute(&self, p: &Permutation) -> Self {
        let mut out = 0;
        for i in 0..24 {
            if self.0 >> i & 1 == 1 {
                out |= 1 << p.apply(i);
            }
        }
        BinaryWord(out)
    }

    pub fn to_hex(&self) -> String {
        format!("{:06x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, CodeError> {
        let t = s.trim().trim_start_matches("0x");
        let v = u32::from_str_radix(t, 16).map_err(|_| CodeError::Syntax(s.to_string()))?;
        if v > ALL_ONES {
            return Err(CodeError::Syntax(s.to_string()));
        }
        Ok(BinaryWord(v))
    }
}

/// Rows of the C24 generator matrix.
pub const C24_GENERATORS: [&str; 12] = [
    "111010 000001 000101 000100",
    "001101 001000 001010 001100",
    "000100 110101 001100 100000",
    "000000 110010 001111 000010",
    "110100 110000 000101 001000",
    "100010 010000 110101 000010",
    "000000 000111 110010 010100",
    "001000 011010 100001 100010",
    "010010 001100 010000 101001",
    "100100 111000 101101 100110",
    "111000 110110 100101 000110",
    "110010 111101 001101 000010",
];

fn parse_bits(s: &str) -> BinaryWord {
    let bits: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    BinaryWord(bits.iter().enumerate().filter(|(_, &c)| c == '1').map(|(i, _)| 1u32 << i).sum())
}

#[derive(Clone, Debug)]
pub struct BinaryCode {
    pub generators: Vec<BinaryWord>,
    words: Vec<u32>,
}

impl BinaryCode {
    pub fn span(generators: Vec<BinaryWord>) -> Self {
        let mut words = vec![0u32];
        for g in &generators {
            if words.binary_search(&g.0).is_ok() {
                continue;
            }
            let more: Vec<u32> = words.iter().map(|w| w ^ g.0).collect();
            words.extend(more);
            words.sort_unstable();
        }
        BinaryCode { generators, words }
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, w: &BinaryWord) -> bool {
        self.words.binary_search(&w.0).is_ok()
    }

    pub fn words(&self) -> impl Iterator<Item = BinaryWord> + '_ {
        self.words.iter().map(|&w| BinaryWord(w))
    }

    pub fn weight_enumerator(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for w in &self.words {
            *m.entry(w.count_ones()).or_insert(0) += 1;
        }
        m
    }

    pub fn octads(&self) -> Vec<BinaryWord> {
        self.words().filter(|w| w.weight() == 8).collect()
    }

    /// A generator whose image leaves the code, if any.
    pub fn automorphism_witness(&self, p: &Permutation) -> Result<Option<BinaryWord>, CodeError> {
        if p.degree() != 24 {
            return Err(CodeError::Length { expected: 24, found: p.degree() });
        }
        Ok(self.generators.iter().copied().find(|g| !self.contains(&g.permute(p))))
    }

    pub fn is_code_automorphism(&self, p: &Permutation) -> Result<bool, CodeError> {
        Ok(self.automorphism_witness(p)?.is_none())
    }
}

pub fn build_c24() -> BinaryCode {
    BinaryCode::span(C24_GENERATORS.iter().map(|s| parse_bits(s)).collect())
}

/// Shared C24 instance.
pub fn c24() -> &'static BinaryCode {
    static CELL: OnceLock<BinaryCode> = OnceLock::new();
    CELL.get_or_init(build_c24)
}

/// Shared list of the 759 octads.
pub fn octads() -> &'static [BinaryWord] {
    static CELL: OnceLock<Vec<BinaryWord>> = OnceLock::new();
    CELL.get_or_init(|| c24().octads())
}

/// F4 as `{0, 1, ω, ω²} ↔ {0, 1, 2, 3}`; addition is XOR.
pub mod f4 {
    pub const OMEGA: u8 = 2;
    pub const OMEGA2: u8 = 3;

    const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

    pub fn add(a: u8, b: u8) -> u8 {
        a ^ b
    }

    pub fn mul(a: u8, b: u8) -> u8 {
        MUL[a as usize][b as usize]
    }

    pub fn name(a: u8) -> &'static str {
        ["0", "1", "ω", "ω²"][a as usize]
    }
}

/// `(a, b, φ(0), φ(1), φ(ω), φ(ω²))` with `φ(x) = a x² + b x + φ(0)`.
pub fn is_hexacode_word(w: &[u8; 6]) -> bool {
    let (a, b, c) = (w[0], w[1], w[2]);
    let phi = |x: u8| f4::add(f4::add(f4::mul(a, f4::mul(x, x)), f4::mul(b, x)), c);
    w[3] == phi(1) && w[4] == phi(f4::OMEGA) && w[5] == phi(f4::OMEGA2)
}

pub fn hexacode() -> Vec<[u8; 6]> {
    let mut out = Vec::with_capacity(64);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let phi = |x: u8| f4::add(f4::add(f4::mul(a, f4::mul(x, x)), f4::mul(b, x)), c);
                out.push([a, b, c, phi(1), phi(f4::OMEGA), phi(f4::OMEGA2)]);
            }
        }
    }
    out
}

/// Labels of the MOG cells.
pub const MOG_LABELS: [[usize; 6]; 4] = [
    [23, 24, 1, 11, 2, 22],
    [19, 3, 20, 4, 10, 18],
    [15, 6, 14, 16, 17, 8],
    [5, 9, 21, 13, 7, 12],
];

/// A 4×6 bit array read through [`MOG_LABELS`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MogArray(pub [[bool; 6]; 4]);

impl MogArray {
    pub fn from_word(w: &BinaryWord) -> Self {
        MogArray(std::array::from_fn(|r| std::array::from_fn(|c| w.has(MOG_LABELS[r][c]))))
    }

    pub fn to_word(&self) -> BinaryWord {
        let mut labels = vec![];
        for r in 0..4 {
            for c in 0..6 {
                if self.0[r][c] {
                    labels.push(MOG_LABELS[r][c]);
                }
            }
        }
        BinaryWord::from_support(&labels).unwrap()
    }

    /// Scores `β + γω + δω²` of the six columns.
    pub fn scores(&self) -> [u8; 6] {
        std::array::from_fn(|c| {
            let mut s = 0;
            for (r, v) in [(1, 1), (2, f4::OMEGA), (3, f4::OMEGA2)] {
                if self.0[r][c] {
                    s = f4::add(s, v);
                }
            }
            s
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let rule = "+--+--+--+\n";
        for r in 0..4 {
            if r % 2 == 0 {
                out.push_str(rule);
            }
            for c in 0..6 {
                if c % 2 == 0 {
                    out.push('|');
                }
                out.push(if self.0[r][c] { '•' } else { ' ' });
            }
            out.push_str("|\n");
        }
        out.push_str(rule);
        out
    }

    fn from_fixture(lines: &[&str]) -> Result<Self, CodeError> {
        if lines.len() != 4 {
            return Err(CodeError::Length { expected: 4, found: lines.len() });
        }
        let mut a = [[false; 6]; 4];
        for (r, l) in lines.iter().enumerate() {
            let cells: Vec<char> = l.chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != 6 {
                return Err(CodeError::Length { expected: 6, found: cells.len() });
            }
            for (c, ch) in cells.iter().enumerate() {
                a[r][c] = match ch {
                    '#' => true,
                    '.' => false,
                    _ => return Err(CodeError::Syntax(l.to_string())),
                };
            }
        }
        Ok(MogArray(a))
    }
}

/// Column parities equal the top-row parity and the scores form a hexacode
/// word.
pub fn mog_membership(a: &MogArray) -> bool {
    let top = a.0[0].iter().filter(|&&b| b).count() % 2;
    let cols_ok = (0..6).all(|c| (0..4).filter(|&r| a.0[r][c]).count() % 2 == top);
    cols_ok && is_hexacode_word(&a.scores())
}

/// The octad containing all the given points (at least five).
pub fn octad_complete(points: &[usize]) -> Result<BinaryWord, CodeError> {
    let mut distinct: Vec<usize> = points.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 5 {
        return Err(CodeError::Length { expected: 5, found: distinct.len() });
    }
    let p = BinaryWord::from_support(&distinct)?;
    let mut hits = octads().iter().filter(|o| o.0 & p.0 == p.0);
    let first = hits.next().copied().ok_or(CodeError::NoOctad)?;
    assert!(hits.next().is_none(), "two octads share five points");
    Ok(first)
}

const DOMINO_FIXTURE: &str = include_str!("../data/domino.txt");

/// The numbered list of octads, index 0 holding octad #1.
pub fn domino_list() -> Result<Vec<MogArray>, CodeError> {
    let mut out = vec![];
    let mut lines = DOMINO_FIXTURE.lines().filter(|l| !l.trim().is_empty() && !l.starts_with(';'));
    while let Some(head) = lines.next() {
        let n: usize = head
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .parse()
            .map_err(|_| CodeError::Syntax(head.to_string()))?;
        if n != out.len() + 1 {
            return Err(CodeError::Syntax(head.to_string()));
        }
        let rows: Vec<&str> = lines.by_ref().take(4).collect();
        out.push(MogArray::from_fixture(&rows)?);
    }
    Ok(out)
}

/// Octads of the numbered list as words.
pub fn domino_octads() -> Vec<BinaryWord> {
    domino_list().expect("fixture parses").iter().map(|a| a.to_word()).collect()
}

/// Number of a word in the numbered list.
pub fn domino_number(w: &BinaryWord) -> Option<usize> {
    domino_octads().iter().position(|o| o == w).map(|i| i + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct DominoReport {
    pub count: usize,
    pub octads: usize,
    pub failures: Vec<usize>,
}

impl DominoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.octads == self.count
    }
}

pub fn verify_domino_list() -> DominoReport {
    let code = c24();
    let list = domino_octads();
    let failures: Vec<usize> = list
        .iter()
        .enumerate()
        .filter(|(_, w)| w.weight() != 8 || !code.contains(w))
        .map(|(i, _)| i + 1)
        .collect();
    DominoReport { count: list.len(), octads: list.len() - failures.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_field() {
        for a in 1..4 {
            assert!((1..4).any(|b| f4::mul(a, b) == 1));
        }
        assert_eq!(f4::add(1, f4::OMEGA), f4::OMEGA2);
        assert_eq!(f4::mul(f4::OMEGA, f4::OMEGA2), 1);
    }

    #[test]
    fn hexacode_has_64_words() {
        let h = hexacode();
        assert_eq!(h.iter().collect::<HashSet<_>>().len(), 64);
        assert!(h.iter().all(is_hexacode_word));
    }

    #[test]
    fn word_formats() {
        let w = BinaryWord::from_support(&[1, 24]).unwrap();
        assert_eq!(w.to_hex(), "800001");
        assert_eq!(BinaryWord::from_hex("800001").unwrap(), w);
        let t = TernaryWord::parse("0+-000000000").unwrap();
        assert_eq!(t.to_string(), "0+-000000000");
    }
}
