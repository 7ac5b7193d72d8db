//! Finite sets as a cartesian closed category, and Lawvere's fixed-point
//! construction on them.

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::advance_tuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FinSetObj {
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("table has {found} entries for a source of size {expected}")]
    Length { expected: usize, found: usize },
    #[error("value {value} is outside the target of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("cannot compose a map into size {left} with a map out of size {right}")]
    Compose { left: usize, right: usize },
    #[error("{0}")]
    Mismatch(String),
}

impl FinSetObj {
    pub fn new(size: usize) -> FinSetObj {
        FinSetObj { size }
    }

    pub fn terminal() -> FinSetObj {
        FinSetObj::new(1)
    }

    /// Pairs `(a, b)` are encoded as `a * other.size + b`.
    pub fn product(self, other: FinSetObj) -> FinSetObj {
        FinSetObj::new(self.size * other.size)
    }

    pub fn pair(self, other: FinSetObj, a: usize, b: usize) -> usize {
        a * other.size + b
    }

    pub fn unpair(self, other: FinSetObj, p: usize) -> (usize, usize) {
        (p / other.size, p % other.size)
    }
}

/// `y^x`, whose elements index the maps `x -> y` in lexicographic order of
/// their tables.
pub fn exponential(x: FinSetObj, y: FinSetObj) -> FinSetObj {
    FinSetObj::new(y.size.pow(x.size as u32))
}

/// Every table `x -> y`, lexicographically.
pub fn functions(x: FinSetObj, y: FinSetObj) -> Vec<Vec<usize>> {
    (0..exponential(x, y).size).map(|i| function_at(x, y, i)).collect()
}

/// The table with index `i` in `y^x`.
pub fn function_at(x: FinSetObj, y: FinSetObj, mut i: usize) -> Vec<usize> {
    let mut table = vec![0; x.size];
    for slot in table.iter_mut().rev() {
        *slot = i % y.size;
        i /= y.size;
    }
    table
}

pub fn function_index(y: FinSetObj, table: &[usize]) -> usize {
    table.iter().fold(0, |acc, &v| acc * y.size + v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinMap {
    pub source: FinSetObj,
    pub target: FinSetObj,
    pub table: Vec<usize>,
}

impl FinMap {
    pub fn new(source: FinSetObj, target: FinSetObj, table: Vec<usize>) -> Result<FinMap, ShapeError> {
        if table.len() != source.size {
            return Err(ShapeError::Length {
                expected: source.size,
                found: table.len(),
            });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= target.size) {
            return Err(ShapeError::OutOfRange { value, size: target.size });
        }
        Ok(FinMap { source, target, table })
    }

    pub fn identity(x: FinSetObj) -> FinMap {
        FinMap {
            source: x,
            target: x,
            table: (0..x.size).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FinMap) -> Result<FinMap, ShapeError> {
        if self.target != next.source {
            return Err(ShapeError::Compose {
                left: self.target.size,
                right: next.source.size,
            });
        }
        Ok(FinMap {
            source: self.source,
            target: next.target,
            table: self.table.iter().map(|&v| next.table[v]).collect(),
        })
    }

    /// `self x other` on products.
    pub fn times(&self, other: &FinMap) -> FinMap {
        let source = self.source.product(other.source);
        let table = (0..source.size)
            .map(|p| {
                let (a, b) = self.source.unpair(other.source, p);
                self.target.pair(other.target, self.table[a], other.table[b])
            })
            .collect();
        FinMap {
            source,
            target: self.target.product(other.target),
            table,
        }
    }

    /// Every map `source -> target`, lexicographically.
    pub fn all(source: FinSetObj, target: FinSetObj) -> impl Iterator<Item = FinMap> {
        (0..exponential(source, target).size).map(move |i| FinMap {
            source,
            target,
            table: function_at(source, target, i),
        })
    }
}

/// `ev: y^x * x -> y`.
pub fn eval_map(x: FinSetObj, y: FinSetObj) -> FinMap {
    let yx = exponential(x, y);
    let source = yx.product(x);
    let table = (0..source.size)
        .map(|p| {
            let (h, a) = yx.unpair(x, p);
            function_at(x, y, h)[a]
        })
        .collect();
    FinMap { source, target: y, table }
}

/// The transpose `z -> y^x` of `g: z * x -> y`.
pub fn curry(g: &FinMap, z: FinSetObj, x: FinSetObj) -> Result<FinMap, ShapeError> {
    if g.source != z.product(x) {
        return Err(ShapeError::Mismatch(format!(
            "source of size {} is not {} * {}",
            g.source.size, z.size, x.size
        )));
    }
    let table = (0..z.size)
        .map(|c| {
            let row: Vec<usize> = (0..x.size).map(|a| g.table[z.pair(x, c, a)]).collect();
            function_index(g.target, &row)
        })
        .collect();
    Ok(FinMap {
        source: z,
        target: exponential(x, g.target),
        table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LawvereOutcome {
    /// `point` is `h(preimage)` where `h(a) = f(ev(g(a), a))` and `g(preimage) = h`.
    FixedPoint { point: usize, diagonal: Vec<usize>, preimage: usize },
    /// `missing` is not `g(a)` for any `a`: the diagonal when it is missing,
    /// else the least such table.
    NotPointSurjective { missing: Vec<usize> },
}

/// For `g: x -> y^x` and `f: y -> y`, a fixed point of `f` when `g` hits
/// every map `x -> y`.
pub fn lawvere_fixed_point(g: &FinMap, f: &FinMap) -> Result<LawvereOutcome, ShapeError> {
    let x = g.source;
    let y = f.source;
    if f.target != y {
        return Err(ShapeError::Mismatch("f is not an endomap".into()));
    }
    if g.target != exponential(x, y) {
        return Err(ShapeError::Mismatch(format!("g does not land in {}^{}", y.size, x.size)));
    }
    let mut hit = vec![false; g.target.size];
    for &v in &g.table {
        hit[v] = true;
    }
    let diagonal: Vec<usize> = (0..x.size).map(|a| f.apply(function_at(x, y, g.apply(a))[a])).collect();
    let d = function_index(y, &diagonal);
    if let Some(missing) = hit.iter().position(|&h| !h) {
        let missing = if hit[d] { function_at(x, y, missing) } else { diagonal };
        return Ok(LawvereOutcome::NotPointSurjective { missing });
    }
    let preimage = g.table.iter().position(|&v| v == d).expect("point-surjective");
    let point = diagonal[preimage];
    assert_eq!(f.apply(point), point, "diagonal value is fixed");
    Ok(LawvereOutcome::FixedPoint { point, diagonal, preimage })
}

/// Largest number of `g` maps examined by `lawvere_survey`.
pub const SURVEY_LIMIT: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawvereSurvey {
    pub x: usize,
    pub y: usize,
    pub exponential: usize,
    /// Maps `x -> y^x` examined, in lexicographic order.
    pub maps_checked: usize,
    /// Whether every such map was examined.
    pub exhaustive: bool,
    pub point_surjective: usize,
    /// Pairs `(g, f)` with `g` point-surjective whose fixed point was verified.
    pub fixed_points_verified: usize,
    /// For `y >= 2`: the first map and the table the diagonal argument with
    /// `f(b) = b + 1 mod y` proves it misses.
    pub cantor_witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Runs the fixed-point construction over every `g: x -> y^x` (up to
/// `SURVEY_LIMIT`) and every `f: y -> y`.
pub fn lawvere_survey(x: FinSetObj, y: FinSetObj) -> LawvereSurvey {
    let yx = exponential(x, y);
    let endos: Vec<FinMap> = FinMap::all(y, y).collect();
    let total = (yx.size as u128).checked_pow(x.size as u32).unwrap_or(u128::MAX);
    let mut survey = LawvereSurvey {
        x: x.size,
        y: y.size,
        exponential: yx.size,
        maps_checked: 0,
        exhaustive: total <= SURVEY_LIMIT as u128,
        point_surjective: 0,
        fixed_points_verified: 0,
        cantor_witness: None,
    };
    if yx.size == 0 && x.size > 0 {
        survey.exhaustive = true;
        return survey;
    }
    let mut table = vec![0; x.size];
    loop {
        let g = FinMap {
            source: x,
            target: yx,
            table: table.clone(),
        };
        survey.maps_checked += 1;
        let mut surjective = false;
        for f in &endos {
            match lawvere_fixed_point(&g, f).expect("shapes agree") {
                LawvereOutcome::FixedPoint { .. } => {
                    surjective = true;
                    survey.fixed_points_verified += 1;
                }
                LawvereOutcome::NotPointSurjective { .. } => break,
            }
        }
        survey.point_surjective += surjective as usize;
        if !advance_tuple(&mut table, yx.size) || survey.maps_checked >= SURVEY_LIMIT {
            break;
        }
    }
    if y.size >= 2 {
        let shift = FinMap {
            source: y,
            target: y,
            table: (0..y.size).map(|b| (b + 1) % y.size).collect(),
        };
        let g = FinMap {
            source: x,
            target: yx,
            table: vec![0; x.size],
        };
        if let Ok(LawvereOutcome::NotPointSurjective { missing }) = lawvere_fixed_point(&g, &shift) {
            survey.cantor_witness = Some((g.table, missing));
        }
    }
    survey
}
