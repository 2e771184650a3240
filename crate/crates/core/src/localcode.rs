//! Constituent codes: a small catalog, random linear codes, and exhaustive
//! constrained-weight profiles.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::entropy::entropy;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};

/// Largest dimension accepted by the constrained-code search.
pub const SEARCH_MAX_DIM: usize = 20;
const RANDOM_RETRIES: usize = 1000;

/// Binary linear code whose `t * symbols` bits are grouped into `symbols`
/// blocks of `t` bits (a `q = 2^t`-ary view).
#[derive(Clone, Debug)]
pub struct LocalCode {
    name: String,
    symbols: usize,
    t: usize,
    generator: Vec<BitVector>,
    parity: BitMatrix,
    distance: OnceLock<Option<usize>>,
}

impl PartialEq for LocalCode {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.symbols == other.symbols
            && self.t == other.t
            && self.generator == other.generator
    }
}

fn check_shape(symbols: usize, t: usize) -> Result<usize> {
    if symbols == 0 || t == 0 {
        return Err(Error::BadParams(format!(
            "need symbols >= 1 and t >= 1, got {symbols}, {t}"
        )));
    }
    Ok(symbols * t)
}

impl LocalCode {
    /// Code spanned by `generator`, which must consist of independent rows of
    /// length `t * symbols`.
    pub fn from_generator(
        name: impl Into<String>,
        symbols: usize,
        t: usize,
        generator: Vec<BitVector>,
    ) -> Result<Self> {
        let len = check_shape(symbols, t)?;
        let g = BitMatrix::from_rows(len, generator)?;
        if g.rank() != g.rows() {
            return Err(Error::BadParams(
                "generator rows are linearly dependent".into(),
            ));
        }
        let parity = BitMatrix::from_rows(len, gf2::nullspace_basis(&g))?;
        Ok(LocalCode {
            name: name.into(),
            symbols,
            t,
            generator: g.row_vectors().to_vec(),
            parity,
            distance: OnceLock::new(),
        })
    }

    /// Kernel of `parity`. The parity matrix is kept as given (it may be
    /// rank deficient); the generator is a nullspace basis.
    pub fn from_parity(
        name: impl Into<String>,
        symbols: usize,
        t: usize,
        parity: BitMatrix,
    ) -> Result<Self> {
        let len = check_shape(symbols, t)?;
        if parity.cols() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: parity.cols(),
            });
        }
        Ok(LocalCode {
            name: name.into(),
            symbols,
            t,
            generator: gf2::nullspace_basis(&parity),
            parity,
            distance: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of `t`-bit symbols.
    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Binary length `t * symbols`.
    pub fn len(&self) -> usize {
        self.symbols * self.t
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Binary dimension.
    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.len() as f64
    }

    /// Alphabet size `2^t` (saturating for very large `t`).
    pub fn q(&self) -> u128 {
        1u128.checked_shl(self.t as u32).unwrap_or(u128::MAX)
    }

    pub fn generator(&self) -> &[BitVector] {
        &self.generator
    }

    pub fn parity(&self) -> &BitMatrix {
        &self.parity
    }

    /// The same bits regrouped into symbols of `t` bits.
    pub fn with_symbol_size(&self, t: usize) -> Result<Self> {
        if t == 0 || !self.len().is_multiple_of(t) {
            return Err(Error::BadParams(format!(
                "length {} is not a multiple of t={t}",
                self.len()
            )));
        }
        Ok(LocalCode {
            name: self.name.clone(),
            symbols: self.len() / t,
            t,
            generator: self.generator.clone(),
            parity: self.parity.clone(),
            distance: self.distance.clone(),
        })
    }

    pub fn contains(&self, x: &BitVector) -> Result<bool> {
        Ok(self.parity.mul_vec(x)?.is_zero())
    }

    /// Exact binary minimum distance, cached after the first call.
    pub fn distance(&self) -> Result<usize> {
        if let Some(d) = self.distance.get() {
            return d.ok_or(Error::ZeroCode);
        }
        let d = match gf2::min_distance(self.len(), &self.generator) {
            Ok(d) => Some(d),
            Err(Error::ZeroCode) => None,
            Err(e) => return Err(e),
        };
        let _ = self.distance.set(d);
        d.ok_or(Error::ZeroCode)
    }

    /// Fewest nonzero `t`-bit symbols in a nonzero codeword.
    pub fn qary_distance(&self) -> Result<usize> {
        if self.t == 1 {
            return self.distance();
        }
        if self.k() == 0 {
            return Err(Error::ZeroCode);
        }
        let (t, symbols) = (self.t, self.symbols);
        let parts = gf2::par_scan_codewords(
            self.len(),
            &self.generator,
            || usize::MAX,
            |best, i, cw| {
                if i != 0 {
                    let w = (0..symbols)
                        .filter(|&s| block_weight(cw, s * t, t) > 0)
                        .count();
                    *best = (*best).min(w);
                }
            },
        )?;
        Ok(parts.into_iter().min().unwrap_or(usize::MAX))
    }

    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        gf2::weight_enumerator(self.len(), &self.generator)
    }

    pub fn to_file(&self) -> LocalCodeFile {
        LocalCodeFile {
            name: self.name.clone(),
            symbols: self.symbols,
            t: self.t,
            k: self.k(),
            generator_rows: self.generator.iter().map(|g| g.to_string()).collect(),
        }
    }
}

/// On-disk form of a [`LocalCode`]; the parity check is rebuilt on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalCodeFile {
    pub name: String,
    pub symbols: usize,
    pub t: usize,
    pub k: usize,
    pub generator_rows: Vec<String>,
}

impl LocalCodeFile {
    pub fn into_code(self) -> Result<LocalCode> {
        let rows = self
            .generator_rows
            .iter()
            .map(|r| r.parse())
            .collect::<Result<Vec<BitVector>>>()?;
        if rows.len() != self.k {
            return Err(Error::Parse(format!(
                "k={} but {} generator rows",
                self.k,
                rows.len()
            )));
        }
        LocalCode::from_generator(self.name, self.symbols, self.t, rows)
    }
}

/// Catalog identifiers. Text form: `hamming7`, `golay23`, `rep:N`, `spc:N`,
/// `full:N`, `random:N:K:SEED`, `file:PATH`; the forms `rep(N)` etc. are also
/// accepted. A suffix `@T` regroups the bits into symbols of `T` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeName {
    Hamming7,
    Golay23,
    Repetition(usize),
    SingleParity(usize),
    Full(usize),
    Random { n: usize, k: usize, seed: u64 },
    File(PathBuf),
    Grouped(Box<CodeName>, usize),
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeName::Hamming7 => write!(f, "hamming7"),
            CodeName::Golay23 => write!(f, "golay23"),
            CodeName::Repetition(n) => write!(f, "rep:{n}"),
            CodeName::SingleParity(n) => write!(f, "spc:{n}"),
            CodeName::Full(n) => write!(f, "full:{n}"),
            CodeName::Random { n, k, seed } => write!(f, "random:{n}:{k}:{seed}"),
            CodeName::File(p) => write!(f, "file:{}", p.display()),
            CodeName::Grouped(inner, t) => write!(f, "{inner}@{t}"),
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::BadParams(format!("invalid {what} `{s}`")))
}

impl FromStr for CodeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(CodeName::File(PathBuf::from(path)));
        }
        if let Some((inner, t)) = s.rsplit_once('@') {
            let t: usize = parse_num(t, "symbol size")?;
            return Ok(CodeName::Grouped(Box::new(inner.parse()?), t));
        }
        // Normalise `rep(5)` and `random(10,3,7)` to the colon form.
        let norm: String = s
            .chars()
            .map(|c| if c == '(' || c == ',' { ':' } else { c })
            .filter(|&c| c != ')' && c != ' ')
            .collect();
        let mut parts = norm.split(':');
        let head = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::BadParams(format!(
                    "`{head}` takes {n} parameter(s), got `{s}`"
                )))
            }
        };
        match head {
            "hamming7" => arity(0).map(|_| CodeName::Hamming7),
            "golay23" => arity(0).map(|_| CodeName::Golay23),
            "rep" => arity(1).and_then(|_| Ok(CodeName::Repetition(parse_num(args[0], "length")?))),
            "spc" => {
                arity(1).and_then(|_| Ok(CodeName::SingleParity(parse_num(args[0], "length")?)))
            }
            "full" => arity(1).and_then(|_| Ok(CodeName::Full(parse_num(args[0], "length")?))),
            "random" => {
                arity(3)?;
                Ok(CodeName::Random {
                    n: parse_num(args[0], "length")?,
                    k: parse_num(args[1], "dimension")?,
                    seed: parse_num(args[2], "seed")?,
                })
            }
            _ => Err(Error::UnknownCode(s.to_string())),
        }
    }
}

fn unit_rows(len: usize, rows: impl IntoIterator<Item = Vec<usize>>) -> Vec<BitVector> {
    rows.into_iter()
        .map(|r| BitVector::from_support(len, r))
        .collect()
}

/// Systematic `[7,4,3]` Hamming code, `G = [I | P]`.
pub fn hamming7() -> LocalCode {
    const P: [[usize; 2]; 3] = [[4, 5], [4, 6], [5, 6]];
    let mut rows: Vec<Vec<usize>> = P
        .iter()
        .enumerate()
        .map(|(i, p)| vec![i, p[0], p[1]])
        .collect();
    rows.push(vec![3, 4, 5, 6]);
    LocalCode::from_generator("hamming7", 7, 1, unit_rows(7, rows)).expect("hamming generator")
}

/// Exponents of the Golay generator polynomial
/// `1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11`.
pub const GOLAY_POLY: [usize; 7] = [0, 2, 4, 5, 6, 10, 11];

/// Cyclic `[23,12,7]` Golay code; the generator rows are the 12 shifts of
/// [`GOLAY_POLY`].
pub fn golay23() -> LocalCode {
    let rows = (0..12).map(|s| GOLAY_POLY.iter().map(|e| e + s).collect());
    LocalCode::from_generator("golay23", 23, 1, unit_rows(23, rows)).expect("golay generator")
}

fn nonzero(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::BadParams("code length must be positive".into()))
    } else {
        Ok(n)
    }
}

pub fn repetition(n: usize) -> Result<LocalCode> {
    LocalCode::from_generator(format!("rep:{n}"), nonzero(n)?, 1, vec![BitVector::ones(n)])
}

pub fn single_parity(n: usize) -> Result<LocalCode> {
    let n = nonzero(n)?;
    let rows = (1..n).map(|i| vec![0, i]);
    LocalCode::from_generator(format!("spc:{n}"), n, 1, unit_rows(n, rows))
}

pub fn full_space(n: usize) -> Result<LocalCode> {
    let n = nonzero(n)?;
    LocalCode::from_generator(
        format!("full:{n}"),
        n,
        1,
        unit_rows(n, (0..n).map(|i| vec![i])),
    )
}

fn random_bits(len: usize, rng: &mut impl Rng) -> BitVector {
    let words = (0..len.div_ceil(64)).map(|_| rng.gen::<u64>()).collect();
    BitVector::from_words(len, words)
}

/// Uniform random `k`-dimensional code of binary length `t * symbols`: the
/// generator entries are i.i.d. uniform and rank-deficient draws are redrawn.
pub fn random_code_with(
    symbols: usize,
    t: usize,
    k: usize,
    rng: &mut impl Rng,
) -> Result<LocalCode> {
    let len = check_shape(symbols, t)?;
    if k > len {
        return Err(Error::BadParams(format!(
            "dimension {k} exceeds length {len}"
        )));
    }
    for _ in 0..RANDOM_RETRIES {
        let rows: Vec<BitVector> = (0..k).map(|_| random_bits(len, rng)).collect();
        let g = BitMatrix::from_rows(len, rows)?;
        if g.rank() == k {
            return LocalCode::from_generator(
                format!("random:{len}:{k}"),
                symbols,
                t,
                g.row_vectors().to_vec(),
            );
        }
    }
    Err(Error::RetryExhausted(RANDOM_RETRIES))
}

/// Kernel of a uniformly random `rows x (t * symbols)` parity-check matrix
/// (no rank conditioning).
pub fn random_parity_code(
    symbols: usize,
    t: usize,
    rows: usize,
    rng: &mut impl Rng,
) -> Result<LocalCode> {
    let len = check_shape(symbols, t)?;
    let h = BitMatrix::from_rows(len, (0..rows).map(|_| random_bits(len, rng)).collect())?;
    LocalCode::from_parity(format!("randparity:{len}:{rows}"), symbols, t, h)
}

pub fn random_code(n: usize, k: usize, seed: u64) -> Result<LocalCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = random_code_with(nonzero(n)?, 1, k, &mut rng)?;
    c.name = format!("random:{n}:{k}:{seed}");
    Ok(c)
}

pub fn load_code_file(path: &Path) -> Result<LocalCode> {
    let text = std::fs::read_to_string(path)?;
    let file: LocalCodeFile = serde_json::from_str(&text)?;
    file.into_code()
}

/// Resolves a catalog identifier.
pub fn catalog_get(name: &CodeName) -> Result<LocalCode> {
    match name {
        CodeName::Hamming7 => Ok(hamming7()),
        CodeName::Golay23 => Ok(golay23()),
        CodeName::Repetition(n) => repetition(*n),
        CodeName::SingleParity(n) => single_parity(*n),
        CodeName::Full(n) => full_space(*n),
        CodeName::Random { n, k, seed } => random_code(*n, *k, *seed),
        CodeName::File(p) => load_code_file(p),
        CodeName::Grouped(inner, t) => {
            let c = catalog_get(inner)?.with_symbol_size(*t)?;
            Ok(LocalCode {
                name: name.to_string(),
                ..c
            })
        }
    }
}

/// Parses and resolves a catalog identifier in one step.
pub fn catalog_lookup(name: &str) -> Result<LocalCode> {
    catalog_get(&name.parse()?)
}

/// Exact non-negative rational in lowest terms, ordered by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Per-`beta` minima of a constrained profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    /// Fewest nonzero symbols among codewords with this `beta`.
    pub min_qary: usize,
    /// Smallest total binary weight among codewords with this `beta`.
    pub min_binary: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    AllSymbols,
    InfoSet(Vec<usize>),
}

/// Minimum weights of the codewords grouped by `beta`, the average binary
/// weight per nonzero symbol divided by `t` (over the restriction set).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstrainedProfile {
    pub code: String,
    pub symbols: usize,
    pub t: usize,
    pub restriction: Restriction,
    pub entries: BTreeMap<Ratio, ProfileEntry>,
}

fn bit_at(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

fn block_weight(words: &[u64], start: usize, t: usize) -> usize {
    (start..start + t).filter(|&i| bit_at(words, i)).count()
}

fn merge_entry(map: &mut BTreeMap<Ratio, ProfileEntry>, beta: Ratio, e: ProfileEntry) {
    map.entry(beta)
        .and_modify(|cur| {
            cur.min_qary = cur.min_qary.min(e.min_qary);
            cur.min_binary = cur.min_binary.min(e.min_binary);
        })
        .or_insert(e);
}

fn profile_scan(code: &LocalCode, scope: &[usize]) -> Result<BTreeMap<Ratio, ProfileEntry>> {
    let t = code.t;
    let symbols = code.symbols;
    let parts =
        gf2::par_scan_codewords(code.len(), &code.generator, BTreeMap::new, |map, _, cw| {
            let (mut nz, mut bits) = (0usize, 0usize);
            for &s in scope {
                let w = block_weight(cw, s * t, t);
                if w > 0 {
                    nz += 1;
                    bits += w;
                }
            }
            if nz == 0 {
                return;
            }
            let total_q = (0..symbols)
                .filter(|&s| block_weight(cw, s * t, t) > 0)
                .count();
            let total_b: usize = cw.iter().map(|w| w.count_ones() as usize).sum();
            let beta = Ratio::new(bits as u64, (t * nz) as u64);
            merge_entry(
                map,
                beta,
                ProfileEntry {
                    min_qary: total_q,
                    min_binary: total_b,
                },
            );
        })?;
    let mut out = BTreeMap::new();
    for part in parts {
        for (b, e) in part {
            merge_entry(&mut out, b, e);
        }
    }
    Ok(out)
}

/// Profile over all symbols: for every nonzero codeword, its `q`-ary weight
/// and `beta`; minima are kept per `beta`.
pub fn constrained_qary_profile(code: &LocalCode) -> Result<ConstrainedProfile> {
    let scope: Vec<usize> = (0..code.symbols).collect();
    Ok(ConstrainedProfile {
        code: code.name.clone(),
        symbols: code.symbols,
        t: code.t,
        restriction: Restriction::AllSymbols,
        entries: profile_scan(code, &scope)?,
    })
}

/// Profile where `beta` is measured only on the nonzero symbols inside the
/// information set `info`; codewords vanishing on `info` are skipped. Both
/// minima range over the whole codeword and are taken independently.
pub fn constrained_infoset_profile(code: &LocalCode, info: &[usize]) -> Result<ConstrainedProfile> {
    if !information_set_check(code, info) {
        return Err(Error::NotAnInformationSet);
    }
    Ok(ConstrainedProfile {
        code: code.name.clone(),
        symbols: code.symbols,
        t: code.t,
        restriction: Restriction::InfoSet(info.to_vec()),
        entries: profile_scan(code, info)?,
    })
}

/// Bit positions covered by a set of symbols.
pub fn symbol_bits(symbols: &[usize], t: usize) -> Vec<usize> {
    symbols.iter().flat_map(|&s| s * t..(s + 1) * t).collect()
}

/// True iff the generator restricted to the bits of `info` has full rank.
pub fn information_set_check(code: &LocalCode, info: &[usize]) -> bool {
    if info.iter().any(|&s| s >= code.symbols) || info.len() * code.t < code.k() {
        return false;
    }
    let cols = symbol_bits(info, code.t);
    let rows = code.generator.iter().map(|g| g.gather(&cols)).collect();
    match BitMatrix::from_rows(cols.len(), rows) {
        Ok(m) => m.rank() == code.k(),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginRow {
    pub beta: Ratio,
    pub beta_value: f64,
    /// Relative `beta`-constrained `q`-ary weight `min_qary / symbols`.
    pub delta1: f64,
    /// `(1 - R1)/h(beta)`; absent for `beta = 1`.
    pub target: Option<f64>,
    /// `delta1 / target`.
    pub margin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginReport {
    pub symbols: usize,
    pub t: usize,
    pub k: usize,
    pub rate: f64,
    pub trials: usize,
    pub best_trial: usize,
    /// Worst margin over `beta` in (0,1); infinite when no such `beta` occurs.
    pub score: f64,
    pub rows: Vec<MarginRow>,
}

fn margin_rows(profile: &ConstrainedProfile, rate: f64) -> Vec<MarginRow> {
    profile
        .entries
        .iter()
        .map(|(&beta, e)| {
            let delta1 = e.min_qary as f64 / profile.symbols as f64;
            let target = (!beta.is_one()).then(|| (1.0 - rate) / entropy(beta.value()));
            MarginRow {
                beta,
                beta_value: beta.value(),
                delta1,
                target,
                margin: target.map(|t| delta1 / t),
            }
        })
        .collect()
}

/// Draws `trials` random `[t * symbols, k]` codes (`k = t * symbols * rate`)
/// and keeps the one whose worst ratio of constrained distance to the random
/// coding target is largest. Trial `i` uses stream `i` of the seed.
pub fn search_constrained_code(
    symbols: usize,
    t: usize,
    rate: f64,
    trials: usize,
    seed: u64,
) -> Result<(LocalCode, MarginReport)> {
    let len = check_shape(symbols, t)?;
    let kf = len as f64 * rate;
    let k = kf.round() as usize;
    if (kf - k as f64).abs() > 1e-9 || k == 0 || k >= len || k > SEARCH_MAX_DIM || trials == 0 {
        return Err(Error::BadParams(format!(
            "need integral 0 < k < {len}, k <= {SEARCH_MAX_DIM} and trials >= 1 (k = {kf}, trials = {trials})"
        )));
    }
    let mut best: Option<(usize, LocalCode, Vec<MarginRow>, f64)> = None;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let code = random_code_with(symbols, t, k, &mut rng)?;
        let profile = constrained_qary_profile(&code)?;
        let rows = margin_rows(&profile, rate);
        let score = rows
            .iter()
            .filter_map(|r| r.margin)
            .fold(f64::INFINITY, f64::min);
        if best.as_ref().is_none_or(|b| score > b.3) {
            best = Some((trial, code, rows, score));
        }
    }
    let (best_trial, code, rows, score) = best.expect("at least one trial");
    let code = LocalCode {
        name: format!("search:{symbols}:{t}:{k}:{seed}:{best_trial}"),
        ..code
    };
    let report = MarginReport {
        symbols,
        t,
        k,
        rate,
        trials,
        best_trial,
        score,
        rows,
    };
    Ok((code, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_parameters() {
        let h = hamming7();
        assert_eq!((h.symbols(), h.k(), h.distance().unwrap()), (7, 4, 3));
        assert_eq!(h.weight_enumerator().unwrap(), vec![1, 0, 0, 7, 7, 0, 0, 1]);
        let g = golay23();
        assert_eq!((g.symbols(), g.k(), g.distance().unwrap()), (23, 12, 7));
        let r = repetition(5).unwrap();
        assert_eq!((r.k(), r.distance().unwrap()), (1, 5));
        assert_eq!(single_parity(6).unwrap().distance().unwrap(), 2);
        assert_eq!(full_space(4).unwrap().k(), 4);
    }

    #[test]
    fn parity_annihilates_generator() {
        for c in [hamming7(), golay23(), random_code(12, 5, 3).unwrap()] {
            for g in c.generator() {
                assert!(c.contains(g).unwrap());
            }
            assert_eq!(c.k() + c.parity().rank(), c.len());
        }
    }

    #[test]
    fn names_round_trip() {
        for s in [
            "hamming7",
            "golay23",
            "rep:5",
            "spc:4",
            "full:3",
            "random:10:3:7",
            "random:6:4:1@2",
        ] {
            let n: CodeName = s.parse().unwrap();
            assert_eq!(n.to_string(), s);
        }
        assert_eq!(
            "rep(5)".parse::<CodeName>().unwrap(),
            CodeName::Repetition(5)
        );
        assert!(matches!(
            "bch15".parse::<CodeName>(),
            Err(Error::UnknownCode(_))
        ));
        assert!(matches!(
            "rep:x".parse::<CodeName>(),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn random_code_is_deterministic() {
        assert_eq!(
            random_code(10, 3, 9).unwrap(),
            random_code(10, 3, 9).unwrap()
        );
        assert!(random_code(3, 4, 0).is_err());
    }

    #[test]
    fn ratio_order() {
        assert!(Ratio::new(1, 3) < Ratio::new(1, 2));
        assert_eq!(Ratio::new(2, 4), Ratio::new(1, 2));
        assert_eq!(Ratio::new(2, 4).to_string(), "1/2");
    }

    #[test]
    fn grouped_repetition_profile() {
        let c = repetition(4).unwrap().with_symbol_size(2).unwrap();
        assert_eq!(c.qary_distance().unwrap(), 2);
        let p = constrained_qary_profile(&c).unwrap();
        assert_eq!(p.entries.len(), 1);
        assert_eq!(
            p.entries[&Ratio::new(1, 1)],
            ProfileEntry {
                min_qary: 2,
                min_binary: 4
            }
        );
    }

    #[test]
    fn binary_profile_has_only_unit_beta() {
        let p = constrained_qary_profile(&hamming7()).unwrap();
        assert_eq!(
            p.entries.keys().copied().collect::<Vec<_>>(),
            vec![Ratio::new(1, 1)]
        );
        assert_eq!(p.entries[&Ratio::new(1, 1)].min_qary, 3);
    }

    #[test]
    fn information_sets() {
        let h = hamming7();
        assert!(information_set_check(&h, &[0, 1, 2, 3]));
        assert!(!information_set_check(&h, &[0, 1, 2]));
        let r = repetition(3).unwrap();
        assert!(information_set_check(&r, &[0]));
        assert!(!information_set_check(&r, &[]));
        assert!(matches!(
            constrained_infoset_profile(&h, &[4, 5, 6]),
            Err(Error::NotAnInformationSet)
        ));
    }

    #[test]
    fn file_round_trip() {
        let c = golay23();
        let json = serde_json::to_string(&c.to_file()).unwrap();
        let back: LocalCodeFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_code().unwrap(), c);
    }

    #[test]
    fn search_reports_every_beta() {
        let (code, rep) = search_constrained_code(4, 2, 0.5, 20, 1).unwrap();
        assert_eq!(code.k(), 4);
        let profile = constrained_qary_profile(&code).unwrap();
        assert_eq!(rep.rows.len(), profile.entries.len());
        let again = search_constrained_code(4, 2, 0.5, 20, 1).unwrap();
        assert_eq!(again.1, rep);
        assert!(search_constrained_code(4, 2, 0.0, 5, 1).is_err());
    }
}
