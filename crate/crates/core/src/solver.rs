//! Exact linear algebra over walk/edge incidence.
//!
//! Row `e` of a [`WalkMatrix`] counts how often each walk uses edge `e`. The
//! weights are identifiable from a set of measured walks exactly when that
//! matrix has rank `|E|`. Everything here is fraction-free integer
//! elimination; rationals only appear in back substitution.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Walk};
use crate::revealer::{RevealCertificate, Target};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("walk {index} ({walk}) is not a non-backtracking walk of the graph")]
    InvalidWalk { index: usize, walk: Walk },
    #[error("walks span {rank} of {needed} edge dimensions")]
    RankDeficient { rank: usize, needed: usize },
    #[error("{walks} walks but {measurements} measurements")]
    LengthMismatch { walks: usize, measurements: usize },
    #[error("measurements are inconsistent with every weighting")]
    InconsistentMeasurements,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Edge-by-walk usage counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkMatrix {
    edge_count: usize,
    walks: Vec<Walk>,
    /// One usage vector per walk, i.e. the columns.
    columns: Vec<Vec<u32>>,
}

impl WalkMatrix {
    /// Builds the matrix with columns in input order.
    pub fn build(g: &Graph, walks: &[Walk]) -> Result<Self, SolverError> {
        let mut columns = Vec::with_capacity(walks.len());
        for (index, w) in walks.iter().enumerate() {
            if w.is_empty() || !g.is_valid_nb_walk(w) {
                return Err(SolverError::InvalidWalk {
                    index,
                    walk: w.clone(),
                });
            }
            columns.push(g.edge_multiplicities(w)?);
        }
        Ok(WalkMatrix {
            edge_count: g.edge_count(),
            walks: walks.to_vec(),
            columns,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn walk_count(&self) -> usize {
        self.walks.len()
    }

    pub fn walks(&self) -> &[Walk] {
        &self.walks
    }

    pub fn entry(&self, e: EdgeId, walk: usize) -> u32 {
        self.columns[walk][e]
    }

    pub fn column(&self, walk: usize) -> &[u32] {
        &self.columns[walk]
    }

    pub fn row(&self, e: EdgeId) -> Vec<u32> {
        self.columns.iter().map(|c| c[e]).collect()
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.columns)
    }
}

pub fn build_walk_matrix(g: &Graph, walks: &[Walk]) -> Result<WalkMatrix, SolverError> {
    WalkMatrix::build(g, walks)
}

/// Integer vectors kept in semi-echelon form: every stored row has a
/// distinct pivot column at which all later rows vanish. Coefficients are
/// reduced by their content after each step.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    width: usize,
    rows: Vec<(usize, Vec<T>)>,
}

/// Fixed-width arithmetic overflowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("integer overflow")]
pub struct Overflow;

/// The scalar operations [`Echelon`] needs. `None` signals overflow.
pub trait ExactInt: Clone + Integer + Signed {
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl ExactInt for BigInt {
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
}

impl ExactInt for i128 {
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
}

impl<T: ExactInt> Echelon<T> {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// The stored rows, a basis of the span.
    pub fn basis(&self) -> impl Iterator<Item = &[T]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Reduces `v` against the stored rows. `Ok(None)` means `v` is in the
    /// span.
    fn reduce(&self, mut v: Vec<T>) -> Result<Option<Vec<T>>, Overflow> {
        debug_assert_eq!(v.len(), self.width);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let (a, b) = (row[*p].clone(), v[*p].clone());
            for (x, y) in v.iter_mut().zip(row) {
                *x = T::mul_sub(&a, x, &b, y).ok_or(Overflow)?;
            }
            normalize(&mut v);
        }
        Ok(v.iter().any(|x| !x.is_zero()).then_some(v))
    }

    /// Adds `v` to the span. Returns whether the rank grew. On overflow the
    /// basis is unchanged.
    pub fn try_insert(&mut self, v: Vec<T>) -> Result<bool, Overflow> {
        match self.reduce(v)? {
            None => Ok(false),
            Some(v) => {
                let p = v.iter().position(|x| !x.is_zero()).expect("nonzero");
                self.rows.push((p, v));
                Ok(true)
            }
        }
    }

    pub fn try_contains(&self, v: Vec<T>) -> Result<bool, Overflow> {
        Ok(self.reduce(v)?.is_none())
    }
}

impl Echelon<BigInt> {
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        self.try_insert(v).expect("big integers do not overflow")
    }

    pub fn contains(&self, v: Vec<BigInt>) -> bool {
        self.try_contains(v).expect("big integers do not overflow")
    }
}

impl Echelon<i128> {
    pub fn to_big(&self) -> Echelon<BigInt> {
        Echelon {
            width: self.width,
            rows: self
                .rows
                .iter()
                .map(|(p, r)| (*p, r.iter().map(|&x| BigInt::from(x)).collect()))
                .collect(),
        }
    }
}

/// Divides by the content and makes the leading entry positive.
fn normalize<T: ExactInt>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let negative = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    let g = if negative { -g } else { g };
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = x.div_floor(&g);
        }
    }
}

/// Fraction-free elimination in place. Pivots are chosen column by column:
/// the smallest nonzero magnitude among the remaining rows, lowest row index
/// on ties. Returns the pivot positions `(row, column)`.
fn bareiss(m: &mut [Vec<BigInt>]) -> Vec<(usize, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(best) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()).then(i.cmp(&j)))
        else {
            continue;
        };
        m.swap(r, best);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let (v, rem) = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]).div_rem(&prev);
                debug_assert!(rem.is_zero());
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Rank over the rationals of a list of integer vectors (rows or columns,
/// rank is the same).
pub fn rational_rank<T>(vectors: &[Vec<T>]) -> usize
where
    T: Clone + Into<BigInt>,
{
    let mut m: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().cloned().map(Into::into).collect())
        .collect();
    bareiss(&mut m).len()
}

fn big_column(column: &[u32]) -> Vec<BigInt> {
    column.iter().map(|&x| BigInt::from(x)).collect()
}

/// Picks exactly `|E|` walks of full rank from the certificates' walks.
///
/// Walks are pooled by target edge id, then by term order, without
/// duplicates; each is kept iff it raises the rank.
pub fn extract_minimal_basis(
    g: &Graph,
    certificates: &BTreeMap<EdgeId, RevealCertificate>,
) -> Result<Vec<Walk>, SolverError> {
    let mut seen = BTreeSet::new();
    let mut basis = Echelon::<BigInt>::new(g.edge_count());
    let mut chosen = Vec::new();
    for cert in certificates.values() {
        for w in cert.walks() {
            if basis.is_full() {
                break;
            }
            if !seen.insert(w.clone()) {
                continue;
            }
            if w.is_empty() || !g.is_valid_nb_walk(w) {
                return Err(SolverError::InvalidWalk {
                    index: chosen.len(),
                    walk: w.clone(),
                });
            }
            if basis.insert(big_column(&g.edge_multiplicities(w)?)) {
                chosen.push(w.clone());
            }
        }
    }
    if !basis.is_full() {
        return Err(SolverError::RankDeficient {
            rank: basis.rank(),
            needed: g.edge_count(),
        });
    }
    Ok(chosen)
}

/// Solves `sum_e mult(walks[i], e) * w_e = measurements[i]` exactly.
///
/// Extra equations beyond a full-rank square subsystem are checked, and any
/// violation is reported as [`SolverError::InconsistentMeasurements`].
pub fn recover_weights(
    g: &Graph,
    walks: &[Walk],
    measurements: &[Rational],
) -> Result<Vec<Rational>, SolverError> {
    if walks.len() != measurements.len() {
        return Err(SolverError::LengthMismatch {
            walks: walks.len(),
            measurements: measurements.len(),
        });
    }
    let matrix = WalkMatrix::build(g, walks)?;
    let n = g.edge_count();

    // Scale each equation by its right-hand side's denominator.
    let mut m: Vec<Vec<BigInt>> = (0..walks.len())
        .map(|i| {
            let d = measurements[i].denom();
            let mut row: Vec<BigInt> = matrix
                .column(i)
                .iter()
                .map(|&x| BigInt::from(x) * d)
                .collect();
            row.push(measurements[i].numer().clone());
            row
        })
        .collect();
    let pivots = bareiss(&mut m);
    if pivots.iter().any(|&(_, c)| c == n) {
        return Err(SolverError::InconsistentMeasurements);
    }
    if pivots.len() < n {
        return Err(SolverError::RankDeficient {
            rank: pivots.len(),
            needed: n,
        });
    }

    let mut weights = vec![Rational::zero(); n];
    for &(r, c) in pivots.iter().rev() {
        let mut rhs = Rational::from_integer(m[r][n].clone());
        for j in c + 1..n {
            if !m[r][j].is_zero() {
                rhs -= &weights[j] * Rational::from_integer(m[r][j].clone());
            }
        }
        weights[c] = rhs / Rational::from_integer(m[r][c].clone());
    }

    for (i, target) in measurements.iter().enumerate() {
        let got: Rational = matrix
            .column(i)
            .iter()
            .zip(&weights)
            .filter(|(&k, _)| k != 0)
            .map(|(&k, w)| w * Rational::from_integer(BigInt::from(k)))
            .sum();
        if &got != target {
            return Err(SolverError::InconsistentMeasurements);
        }
    }
    Ok(weights)
}

/// Whether a flat certificate's identity holds for every weighting and all
/// of its walks are closed non-backtracking walks from its home.
pub fn verify_certificate(g: &Graph, cert: &RevealCertificate) -> bool {
    if !cert.is_flat() || cert.target_coefficient.is_zero() {
        return false;
    }
    if let Target::Edge(e) = cert.target {
        if e >= g.edge_count() {
            return false;
        }
    }
    let walks_ok = cert.terms.iter().all(|t| {
        let w = &t.walk;
        !w.is_empty() && w.is_closed() && w.first() == cert.home && g.is_valid_nb_walk(w)
    });
    walks_ok && cert.residual(g).is_ok_and(|r| r.iter().all(Zero::is_zero))
}
