//! One representative point set per simple order type, for small n.
//!
//! Two sources: binary order-type database files (records of `n` points,
//! each coordinate an unsigned little-endian integer of 8 or 16 bits), and
//! a sampling fallback that deduplicates random general-position sets by
//! unlabelled order type.
//!
//! Representatives are per unlabelled order type. Conflict verification
//! searches over placements, and combinatorially equivalent sets admit the
//! same embeddable graphs, so one set per class suffices.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::geom::{LabelledPointSet, OrientationTable};

pub const ENV_DIR: &str = "CONFLICTKIT_OTDB_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoordWidth {
    #[serde(rename = "8")]
    Eight,
    #[serde(rename = "16")]
    Sixteen,
}

impl CoordWidth {
    pub fn bytes(self) -> usize {
        match self {
            CoordWidth::Eight => 1,
            CoordWidth::Sixteen => 2,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            CoordWidth::Eight => "b08",
            CoordWidth::Sixteen => "b16",
        }
    }

    fn max(self) -> u32 {
        match self {
            CoordWidth::Eight => u8::MAX as u32,
            CoordWidth::Sixteen => u16::MAX as u32,
        }
    }
}

impl std::str::FromStr for CoordWidth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "8" | "b08" => Ok(CoordWidth::Eight),
            "16" | "b16" => Ok(CoordWidth::Sixteen),
            _ => Err(Error::Invalid(format!("coordinate width must be 8 or 16, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Database,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderTypeRecord {
    pub n: usize,
    pub points: LabelledPointSet,
    pub source: Source,
}

fn record_bytes(n: usize, width: CoordWidth) -> usize {
    2 * n * width.bytes()
}

/// Streaming reader over a binary order-type file.
pub struct OrderTypeReader {
    reader: BufReader<File>,
    n: usize,
    width: CoordWidth,
    index: usize,
    count: usize,
    buf: Vec<u8>,
}

impl OrderTypeReader {
    /// Number of records in the file.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn decode(&self) -> Result<LabelledPointSet> {
        let b = self.width.bytes();
        let coord = |i: usize| -> i64 {
            let s = &self.buf[i * b..(i + 1) * b];
            match self.width {
                CoordWidth::Eight => s[0] as i64,
                CoordWidth::Sixteen => u16::from_le_bytes([s[0], s[1]]) as i64,
            }
        };
        let coords: Vec<(i64, i64)> = (0..self.n).map(|i| (coord(2 * i), coord(2 * i + 1))).collect();
        LabelledPointSet::from_coords(&coords).map_err(|_| Error::RecordNotGeneralPosition { index: self.index })
    }
}

impl Iterator for OrderTypeReader {
    type Item = Result<OrderTypeRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.index >= self.count {
            return None;
        }
        if let Err(e) = self.reader.read_exact(&mut self.buf) {
            self.index = self.count;
            return Some(Err(e.into()));
        }
        let out = self.decode().and_then(|points| {
            if OrientationTable::new(&points).is_general_position() {
                Ok(OrderTypeRecord {
                    n: self.n,
                    points,
                    source: Source::Database,
                })
            } else {
                Err(Error::RecordNotGeneralPosition { index: self.index })
            }
        });
        self.index += 1;
        if out.is_err() {
            self.index = self.count;
        }
        Some(out)
    }
}

/// Opens `path` as a sequence of `n`-point records. The file size must be a
/// multiple of the record size; each record is checked for general position
/// as it is read, and the first failure ends the stream with its index.
pub fn read_order_type_file(path: &Path, n: usize, width: CoordWidth) -> Result<OrderTypeReader> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    let file = File::open(path)?;
    let size = file.metadata()?.len();
    let record = record_bytes(n, width) as u64;
    if size % record != 0 {
        return Err(Error::RecordSize {
            path: path.to_path_buf(),
            size,
            record,
        });
    }
    Ok(OrderTypeReader {
        reader: BufReader::new(file),
        n,
        width,
        index: 0,
        count: (size / record) as usize,
        buf: vec![0; record as usize],
    })
}

/// Writes point sets in the binary layout. Coordinates must fit the width.
pub fn write_order_type_file(path: &Path, sets: &[LabelledPointSet], width: CoordWidth) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    let n = sets.first().map_or(0, LabelledPointSet::len);
    for (index, set) in sets.iter().enumerate() {
        if set.len() != n {
            return Err(Error::SizeMismatch { expected: n, got: set.len() });
        }
        for p in set.points() {
            for c in [&p.x, &p.y] {
                let v = u32::try_from(c)
                    .ok()
                    .filter(|&v| v <= width.max())
                    .ok_or_else(|| out_of_range("coordinate", c, &format!("0..={} (record {index})", width.max())))?;
                match width {
                    CoordWidth::Eight => out.write_all(&[v as u8])?,
                    CoordWidth::Sixteen => out.write_all(&(v as u16).to_le_bytes())?,
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormatCandidate {
    pub n: usize,
    pub width: CoordWidth,
    pub records: u64,
    /// The first record decodes to a general-position set.
    pub first_record_ok: bool,
}

/// Layouts (n from 3 to 12, either width) consistent with the file size.
pub fn probe_format(path: &Path) -> Result<Vec<FormatCandidate>> {
    let size = std::fs::metadata(path)?.len();
    let mut out = Vec::new();
    for width in [CoordWidth::Eight, CoordWidth::Sixteen] {
        for n in 3..=12 {
            let record = record_bytes(n, width) as u64;
            if size == 0 || size % record != 0 {
                continue;
            }
            let first_record_ok = read_order_type_file(path, n, width)?.next().is_some_and(|r| r.is_ok());
            out.push(FormatCandidate {
                n,
                width,
                records: size / record,
                first_record_ok,
            });
        }
    }
    Ok(out)
}

/// Complete invariant of the unlabelled order type of a general-position
/// set: the smallest sign pattern over the labellings that start at a hull
/// vertex `h` and list the remaining points counterclockwise around `h`.
/// Any orientation-preserving bijection maps these labellings onto each
/// other, so equal invariants mean equivalent sets and vice versa.
pub fn canonical_order_type(p: &LabelledPointSet) -> Result<Vec<i8>> {
    Ok(canonical_labelling(p)?.1)
}

/// The canonical labelling (as a relabelling for
/// [`LabelledPointSet::relabel`]) together with its sign pattern.
fn canonical_labelling(p: &LabelledPointSet) -> Result<(Vec<usize>, Vec<i8>)> {
    let n = p.len();
    if n < 3 {
        return Err(Error::TooFewPoints { min: 3, got: n });
    }
    let t = OrientationTable::new(p);
    if !t.is_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let mut best: Option<(Vec<usize>, Vec<i8>)> = None;
    for h in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != h).collect();
        if !is_hull_vertex(&t, h) {
            continue;
        }
        let mut order = others;
        order.sort_by(|&a, &b| 0.cmp(&t.get(h, a, b)));
        let mut labelling = Vec::with_capacity(n);
        labelling.push(h);
        labelling.extend(order);
        let pattern = pattern_under(&t, &labelling);
        if best.as_ref().is_none_or(|(_, b)| pattern < *b) {
            best = Some((labelling, pattern));
        }
    }
    Ok(best.expect("a hull vertex exists"))
}

fn is_hull_vertex(t: &OrientationTable, h: usize) -> bool {
    let n = t.len();
    // h is extreme iff some other point a sees every remaining point on one
    // side of the line h-a.
    (0..n).filter(|&a| a != h).any(|a| (0..n).all(|b| b == h || b == a || t.get(h, a, b) > 0))
}

fn pattern_under(t: &OrientationTable, labelling: &[usize]) -> Vec<i8> {
    let n = labelling.len();
    let mut out = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(t.get(labelling[i], labelling[j], labelling[k]));
            }
        }
    }
    out
}

/// Fallback sampler settings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Stop once this many classes are found.
    pub target: Option<usize>,
    /// Stop after this many consecutive samples without a new class.
    pub stall: u64,
}

impl SamplerConfig {
    pub fn new(seed: u64) -> Self {
        SamplerConfig {
            seed,
            target: None,
            stall: 200_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Generated {
    pub n: usize,
    pub records: Vec<OrderTypeRecord>,
    pub samples: u64,
    /// Stopped because the stall threshold was hit.
    pub stalled: bool,
    /// Whether the explicit target was reached; absent without a target.
    pub target_reached: Option<bool>,
}

impl Generated {
    /// False only when an explicit target was missed.
    pub fn complete(&self) -> bool {
        self.target_reached != Some(false)
    }
}

pub const SAMPLER_MAX_N: usize = 8;
const GRID_BITS: u32 = 16;
const CHUNKS: u64 = 8;
const CHUNK_SAMPLES: u64 = 2048;

/// One general-position sample on a grid whose side varies per sample
/// between 2^2 and 2^16; small grids reach degenerate-looking classes far
/// more often than the full grid does.
fn sample_set(n: usize, rng: &mut ChaCha8Rng) -> LabelledPointSet {
    loop {
        let min_bits = if n <= 4 { 2 } else { 3 };
        let side: i64 = 1 << rng.gen_range(min_bits..=GRID_BITS);
        if let Ok(p) = crate::sampling::random_general_position(n, side, rng) {
            return p;
        }
    }
}

/// A sample's canonical labelling, its orientation pattern and the points.
type Sampled = (Vec<usize>, Vec<i8>, LabelledPointSet);

/// Rejection-samples general-position sets and keeps one per unlabelled
/// order type, relabelled canonically, in order of discovery. Sampling runs
/// in fixed chunks with per-chunk seeds, so the output does not depend on
/// the number of threads.
pub fn generate_representatives(n: usize, cfg: &SamplerConfig) -> Result<Generated> {
    if !(3..=SAMPLER_MAX_N).contains(&n) {
        return Err(out_of_range("n", n, "3..=8"));
    }
    let mut seen = HashSet::new();
    let mut records = Vec::new();
    let mut samples = 0u64;
    let mut since_new = 0u64;
    let mut round = 0u64;
    loop {
        let batch: Vec<Vec<Sampled>> = (0..CHUNKS)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(round * CHUNKS + chunk);
                (0..CHUNK_SAMPLES)
                    .map(|_| {
                        let p = sample_set(n, &mut rng);
                        let (labelling, pattern) = canonical_labelling(&p).expect("sampled in general position");
                        (labelling, pattern, p)
                    })
                    .collect()
            })
            .collect();
        for (labelling, pattern, p) in batch.into_iter().flatten() {
            samples += 1;
            if seen.insert(pattern) {
                since_new = 0;
                records.push(OrderTypeRecord {
                    n,
                    points: p.relabel(&labelling)?,
                    source: Source::Sampled,
                });
                if cfg.target.is_some_and(|t| records.len() >= t) {
                    return Ok(Generated {
                        n,
                        records,
                        samples,
                        stalled: false,
                        target_reached: Some(true),
                    });
                }
            } else {
                since_new += 1;
                if since_new >= cfg.stall {
                    return Ok(Generated {
                        n,
                        records,
                        samples,
                        stalled: true,
                        target_reached: cfg.target.map(|_| false),
                    });
                }
            }
        }
        round += 1;
    }
}

/// Where representatives come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OtdbConfig {
    /// Directory holding `otypesNN.b08` / `otypesNN.b16`.
    pub dir: Option<PathBuf>,
    pub allow_fallback: bool,
    pub sampler: SamplerConfig,
}

impl OtdbConfig {
    /// Database directory from the environment, fallback allowed.
    pub fn from_env(seed: u64) -> Self {
        OtdbConfig {
            dir: std::env::var_os(ENV_DIR).map(PathBuf::from),
            allow_fallback: true,
            sampler: SamplerConfig::new(seed),
        }
    }

    pub fn database_file(&self, n: usize) -> Option<(PathBuf, CoordWidth)> {
        let dir = self.dir.as_ref()?;
        [CoordWidth::Eight, CoordWidth::Sixteen].into_iter().find_map(|w| {
            let path = dir.join(format!("otypes{n:02}.{}", w.extension()));
            path.is_file().then_some((path, w))
        })
    }
}

/// A stream of representatives and a note of which source serves it.
pub struct Representatives {
    pub source: Source,
    pub path: Option<PathBuf>,
    /// Sampler diagnostics when the fallback served.
    pub generated: Option<Generated>,
    stream: Box<dyn Iterator<Item = Result<LabelledPointSet>> + Send>,
}

impl std::fmt::Debug for Representatives {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representatives")
            .field("source", &self.source)
            .field("path", &self.path)
            .finish_non_exhaustive()
    }
}

impl Iterator for Representatives {
    type Item = Result<LabelledPointSet>;

    fn next(&mut self) -> Option<Self::Item> {
        self.stream.next()
    }
}

/// The database file for `n` when configured and present, else the
/// sampling fallback when allowed.
pub fn representatives(n: usize, cfg: &OtdbConfig) -> Result<Representatives> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    if let Some((path, width)) = cfg.database_file(n) {
        let reader = read_order_type_file(&path, n, width)?;
        return Ok(Representatives {
            source: Source::Database,
            path: Some(path),
            generated: None,
            stream: Box::new(reader.map(|r| r.map(|rec| rec.points))),
        });
    }
    if !cfg.allow_fallback || n > SAMPLER_MAX_N {
        return Err(Error::NoSource(n));
    }
    let generated = generate_representatives(n, &cfg.sampler)?;
    let sets: Vec<LabelledPointSet> = generated.records.iter().map(|r| r.points.clone()).collect();
    Ok(Representatives {
        source: Source::Sampled,
        path: None,
        generated: Some(generated),
        stream: Box::new(sets.into_iter().map(Ok)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(coords: &[(i64, i64)]) -> LabelledPointSet {
        LabelledPointSet::from_coords(coords).unwrap()
    }

    #[test]
    fn small_class_counts() {
        for (n, expected) in [(3, 1), (4, 2), (5, 3)] {
            let g = generate_representatives(n, &SamplerConfig { stall: 20_000, ..SamplerConfig::new(1) }).unwrap();
            assert_eq!(g.records.len(), expected, "n = {n}");
            assert!(g.stalled);
        }
    }

    #[test]
    fn target_is_reported() {
        let cfg = SamplerConfig {
            seed: 3,
            target: Some(2),
            stall: 10_000,
        };
        let g = generate_representatives(4, &cfg).unwrap();
        assert_eq!(g.target_reached, Some(true));
        let cfg = SamplerConfig {
            seed: 3,
            target: Some(3),
            stall: 10_000,
        };
        let g = generate_representatives(4, &cfg).unwrap();
        assert_eq!(g.target_reached, Some(false));
        assert!(!g.complete());
        assert!(generate_representatives(9, &cfg).is_err());
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let p = set(&[(0, 0), (10, 1), (3, 9), (4, 3), (6, 4)]);
        let q = p.relabel(&[3, 0, 4, 2, 1]).unwrap();
        assert_eq!(canonical_order_type(&p).unwrap(), canonical_order_type(&q).unwrap());
        let mirrored = p.affine_map([-1, 0, 0, 1, 0, 0]).unwrap();
        let convex = set(&[(0, 0), (10, 0), (12, 6), (5, 11), (-2, 6)]);
        assert_ne!(canonical_order_type(&p).unwrap(), canonical_order_type(&convex).unwrap());
        // Mirror images may or may not be equivalent; the form must agree
        // with the bijection search either way.
        let same = canonical_order_type(&p).unwrap() == canonical_order_type(&mirrored).unwrap();
        let equivalent = crate::geom::are_combinatorially_equivalent(&p, &mirrored).unwrap().is_some();
        assert_eq!(same, equivalent);
    }

    #[test]
    fn binary_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("otypes03.b08");
        let sets = vec![set(&[(0, 0), (200, 3), (7, 255)]), set(&[(1, 1), (0, 9), (9, 0)])];
        write_order_type_file(&path, &sets, CoordWidth::Eight).unwrap();
        assert_eq!(std::fs::metadata(&path).unwrap().len(), 12);
        let reader = read_order_type_file(&path, 3, CoordWidth::Eight).unwrap();
        assert_eq!(reader.len(), 2);
        let back: Vec<LabelledPointSet> = reader.map(|r| r.unwrap().points).collect();
        assert_eq!(back, sets);

        let too_big = vec![set(&[(0, 0), (256, 3), (7, 255)])];
        assert!(write_order_type_file(&path, &too_big, CoordWidth::Eight).is_err());
    }

    #[test]
    fn size_and_position_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.b08");
        std::fs::write(&path, [0u8; 7]).unwrap();
        assert!(matches!(
            read_order_type_file(&path, 3, CoordWidth::Eight),
            Err(Error::RecordSize { .. })
        ));
        // Second record collinear.
        std::fs::write(&path, [0, 0, 5, 1, 1, 5, 0, 0, 1, 1, 2, 2]).unwrap();
        let results: Vec<_> = read_order_type_file(&path, 3, CoordWidth::Eight).unwrap().collect();
        assert!(results[0].is_ok());
        assert!(matches!(results[1], Err(Error::RecordNotGeneralPosition { index: 1 })));
    }

    #[test]
    fn probe_lists_candidates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.bin");
        let sets = vec![set(&[(0, 0), (200, 3), (7, 255), (50, 60)]); 3];
        write_order_type_file(&path, &sets, CoordWidth::Eight).unwrap();
        let c = probe_format(&path).unwrap();
        assert!(c.iter().any(|c| c.n == 4 && c.width == CoordWidth::Eight && c.records == 3 && c.first_record_ok));
    }

    #[test]
    fn database_takes_priority() {
        let dir = tempfile::tempdir().unwrap();
        let sets = vec![set(&[(0, 0), (9, 0), (0, 9), (2, 2)])];
        write_order_type_file(&dir.path().join("otypes04.b08"), &sets, CoordWidth::Eight).unwrap();
        let cfg = OtdbConfig {
            dir: Some(dir.path().to_path_buf()),
            allow_fallback: false,
            sampler: SamplerConfig::new(0),
        };
        let reps = representatives(4, &cfg).unwrap();
        assert_eq!(reps.source, Source::Database);
        assert_eq!(reps.map(|r| r.unwrap()).collect::<Vec<_>>(), sets);
        assert!(matches!(representatives(5, &cfg), Err(Error::NoSource(5))));
    }
}
