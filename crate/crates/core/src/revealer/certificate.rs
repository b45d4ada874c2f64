use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RevealError;
use crate::graph::{EdgeId, Graph, GraphError, VertexId, Walk, WeightedGraph};
use crate::Rational;

/// What a certificate reveals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Edge(EdgeId),
    Walk(Walk),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigInt,
    pub walk: Walk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeTerm {
    pub coefficient: BigInt,
    pub edge: EdgeId,
}

/// Integer witness that a target is revealed from `home`:
///
/// ```text
/// target_coefficient * F(target) = sum(c * F(walk)) + sum(d * w_edge)
/// ```
///
/// Every walk is a closed non-backtracking walk based at `home`. Edge terms
/// refer to edges that have certificates of their own; [`flatten`] removes
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevealCertificate {
    pub home: VertexId,
    pub target: Target,
    pub target_coefficient: BigInt,
    pub terms: Vec<Term>,
    pub edge_terms: Vec<EdgeTerm>,
}

impl RevealCertificate {
    pub fn is_flat(&self) -> bool {
        self.edge_terms.is_empty()
    }

    /// Edge-usage vector of the target (a unit vector for edge targets).
    pub fn target_multiplicities(&self, g: &Graph) -> Result<Vec<BigInt>, GraphError> {
        Ok(match &self.target {
            Target::Edge(e) => {
                let mut v = vec![BigInt::zero(); g.edge_count()];
                v[*e] = BigInt::one();
                v
            }
            Target::Walk(w) => g
                .edge_multiplicities(w)?
                .into_iter()
                .map(BigInt::from)
                .collect(),
        })
    }

    /// Per-edge value of `sum(terms) + sum(edge_terms) - c * target`, as
    /// formal combinations of edge weights. All zero iff the certificate
    /// holds for every weighting.
    pub fn residual(&self, g: &Graph) -> Result<Vec<BigInt>, GraphError> {
        let mut acc: Vec<BigInt> = self
            .target_multiplicities(g)?
            .into_iter()
            .map(|m| -(m * &self.target_coefficient))
            .collect();
        for term in &self.terms {
            for (e, m) in g.edge_multiplicities(&term.walk)?.into_iter().enumerate() {
                if m != 0 {
                    acc[e] += &term.coefficient * BigInt::from(m);
                }
            }
        }
        for et in &self.edge_terms {
            acc[et.edge] += &et.coefficient;
        }
        Ok(acc)
    }

    /// Evaluates the right-hand side against concrete weights and divides by
    /// the target coefficient.
    pub fn evaluate(&self, g: &WeightedGraph) -> Result<Rational, GraphError> {
        let mut sum = Rational::zero();
        for term in &self.terms {
            sum += g.walk_weight(&term.walk)? * Rational::from_integer(term.coefficient.clone());
        }
        for et in &self.edge_terms {
            sum += g.weight(et.edge) * Rational::from_integer(et.coefficient.clone());
        }
        Ok(sum / Rational::from_integer(self.target_coefficient.clone()))
    }

    pub fn walks(&self) -> impl Iterator<Item = &Walk> {
        self.terms.iter().map(|t| &t.walk)
    }
}

/// Rational linear combination of closed walks and edge weights. The
/// constructions accumulate identities here and convert to an integer
/// certificate at the end.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Combination {
    walks: BTreeMap<Walk, Rational>,
    edges: BTreeMap<EdgeId, Rational>,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, by: Rational) {
    if by.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(by);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += by;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl Combination {
    pub fn new() -> Self {
        Self::default()
    }

    /// The combination `1 * F(walk)`.
    pub fn walk(walk: Walk) -> Self {
        let mut c = Self::new();
        c.add_walk(walk, Rational::one());
        c
    }

    pub fn add_walk(&mut self, walk: Walk, coefficient: Rational) {
        bump(&mut self.walks, walk, coefficient);
    }

    pub fn add_edge(&mut self, edge: EdgeId, coefficient: Rational) {
        bump(&mut self.edges, edge, coefficient);
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Combination, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (w, q) in &other.walks {
            bump(&mut self.walks, w.clone(), q * factor);
        }
        for (e, q) in &other.edges {
            bump(&mut self.edges, *e, q * factor);
        }
    }

    pub fn walks(&self) -> impl Iterator<Item = (&Walk, &Rational)> {
        self.walks.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Rational)> {
        self.edges.iter().map(|(e, q)| (*e, q))
    }

    pub fn is_zero(&self) -> bool {
        self.walks.is_empty() && self.edges.is_empty()
    }

    pub fn evaluate(&self, g: &WeightedGraph) -> Result<Rational, GraphError> {
        let mut sum = Rational::zero();
        for (w, q) in &self.walks {
            sum += g.walk_weight(w)? * q;
        }
        for (e, q) in &self.edges {
            sum += g.weight(*e) * q;
        }
        Ok(sum)
    }

    /// Clears denominators: the target coefficient becomes the least common
    /// multiple of all coefficient denominators.
    pub fn into_certificate(self, home: VertexId, target: Target) -> RevealCertificate {
        let lcm = self
            .walks
            .values()
            .chain(self.edges.values())
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scale = |q: Rational| -> BigInt {
            let scaled = q * Rational::from_integer(lcm.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        };
        RevealCertificate {
            home,
            target,
            terms: self
                .walks
                .into_iter()
                .map(|(walk, q)| Term {
                    coefficient: scale(q),
                    walk,
                })
                .collect(),
            edge_terms: self
                .edges
                .into_iter()
                .map(|(edge, q)| EdgeTerm {
                    coefficient: scale(q),
                    edge,
                })
                .collect(),
            target_coefficient: lcm,
        }
    }

    /// Divides through by the target coefficient.
    pub fn from_certificate(cert: &RevealCertificate) -> Self {
        let mut c = Self::new();
        let denom = Rational::from_integer(cert.target_coefficient.clone());
        for t in &cert.terms {
            c.add_walk(
                t.walk.clone(),
                Rational::from_integer(t.coefficient.clone()) / &denom,
            );
        }
        for et in &cert.edge_terms {
            c.add_edge(
                et.edge,
                Rational::from_integer(et.coefficient.clone()) / &denom,
            );
        }
        c
    }
}

/// Resolves edge terms by substituting the certificates they refer to,
/// scaling by the least common multiple of their target coefficients so
/// every coefficient stays integral. The result is reduced by the gcd of all
/// its coefficients and has a positive target coefficient.
pub fn flatten(
    cert: &RevealCertificate,
    store: &BTreeMap<EdgeId, RevealCertificate>,
) -> Result<RevealCertificate, RevealError> {
    if cert.is_flat() {
        return Ok(cert.clone());
    }
    let mut flattener = Flattener {
        store,
        memo: HashMap::new(),
        visiting: HashSet::new(),
    };
    flattener.flatten(cert)
}

/// Flattens every certificate in `store`, sharing work between them.
pub fn flatten_all(
    store: &BTreeMap<EdgeId, RevealCertificate>,
) -> Result<BTreeMap<EdgeId, RevealCertificate>, RevealError> {
    let mut flattener = Flattener {
        store,
        memo: HashMap::new(),
        visiting: HashSet::new(),
    };
    store
        .keys()
        .map(|&e| flattener.edge(e).map(|c| (e, c)))
        .collect()
}

struct Flattener<'a> {
    store: &'a BTreeMap<EdgeId, RevealCertificate>,
    memo: HashMap<EdgeId, RevealCertificate>,
    visiting: HashSet<EdgeId>,
}

impl Flattener<'_> {
    fn edge(&mut self, e: EdgeId) -> Result<RevealCertificate, RevealError> {
        if let Some(done) = self.memo.get(&e) {
            return Ok(done.clone());
        }
        let cert = self
            .store
            .get(&e)
            .ok_or(RevealError::MissingCertificate(e))?;
        if cert.target != Target::Edge(e) {
            return Err(RevealError::Precondition(format!(
                "certificate stored under edge {e} has a different target"
            )));
        }
        if !self.visiting.insert(e) {
            return Err(RevealError::CyclicDependency(e));
        }
        let flat = self.flatten(cert)?;
        self.visiting.remove(&e);
        self.memo.insert(e, flat.clone());
        Ok(flat)
    }

    fn flatten(&mut self, cert: &RevealCertificate) -> Result<RevealCertificate, RevealError> {
        if cert.is_flat() {
            return Ok(cert.clone());
        }
        let mut resolved = Vec::with_capacity(cert.edge_terms.len());
        for et in &cert.edge_terms {
            let sub = self.edge(et.edge)?;
            if sub.home != cert.home {
                return Err(RevealError::HomeMismatch {
                    expected: cert.home,
                    found: sub.home,
                });
            }
            resolved.push((et.coefficient.clone(), sub));
        }
        let alpha = resolved.iter().fold(BigInt::one(), |acc, (_, sub)| {
            acc.lcm(&sub.target_coefficient)
        });

        let mut terms: BTreeMap<Walk, BigInt> = BTreeMap::new();
        for t in &cert.terms {
            *terms.entry(t.walk.clone()).or_insert_with(BigInt::zero) += &alpha * &t.coefficient;
        }
        for (c, sub) in &resolved {
            let factor = &alpha * c / &sub.target_coefficient;
            for t in &sub.terms {
                *terms.entry(t.walk.clone()).or_insert_with(BigInt::zero) +=
                    &factor * &t.coefficient;
            }
        }
        terms.retain(|_, c| !c.is_zero());

        let mut target_coefficient = &alpha * &cert.target_coefficient;
        let mut g = terms
            .values()
            .fold(target_coefficient.abs(), |acc, c| acc.gcd(c));
        if target_coefficient.is_negative() {
            g = -g;
        }
        target_coefficient /= &g;
        Ok(RevealCertificate {
            home: cert.home,
            target: cert.target.clone(),
            target_coefficient,
            terms: terms
                .into_iter()
                .map(|(walk, c)| Term {
                    coefficient: c / &g,
                    walk,
                })
                .collect(),
            edge_terms: Vec::new(),
        })
    }
}
