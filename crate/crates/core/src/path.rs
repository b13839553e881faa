//! Interchangeable path-length strategies: plain edge counting, neighbour
//! density edge weights, and local-area density compensation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::taxonomy::{ConceptId, Connection, Taxonomy};

pub const DEFAULT_LAMBDA: f64 = 0.3;

const WEIGHT_MAX: f64 = 2.0;
const WEIGHT_MIN: f64 = 1.0;

/// Compensation factor, always within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Lambda(f64);

impl Lambda {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Lambda(value))
        } else {
            Err(Error::LambdaOutOfRange(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Lambda {
    fn default() -> Self {
        Lambda(DEFAULT_LAMBDA)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathModel {
    #[default]
    EdgeCounting,
    EdgeWeighted,
    DensityCompensated {
        lambda: Lambda,
    },
}

impl PathModel {
    pub fn density(lambda: f64) -> Result<Self> {
        Ok(PathModel::DensityCompensated {
            lambda: Lambda::new(lambda)?,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PathModel::EdgeCounting => "edge",
            PathModel::EdgeWeighted => "weighted",
            PathModel::DensityCompensated { .. } => "density",
        }
    }

    /// Same kind with another lambda; only density compensation uses it.
    pub fn with_lambda(self, lambda: Lambda) -> Self {
        match self {
            PathModel::DensityCompensated { .. } => PathModel::DensityCompensated { lambda },
            other => other,
        }
    }
}

impl fmt::Display for PathModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathModel::DensityCompensated { lambda } => write!(f, "density(λ={})", lambda.get()),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for PathModel {
    type Err = Error;

    /// Accepts `edge`, `weighted`, `density` (default lambda) or `density:0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, lambda) = match s.split_once(':') {
            Some((k, l)) => (k, Some(l)),
            None => (s, None),
        };
        let model = match kind {
            "edge" | "edge-counting" | "counting" => PathModel::EdgeCounting,
            "weighted" | "edge-weighted" | "weight" => PathModel::EdgeWeighted,
            "density" | "density-compensated" => PathModel::DensityCompensated {
                lambda: Lambda::default(),
            },
            _ => return Err(Error::InvalidParameter(format!("unknown path model {s:?}"))),
        };
        match (model, lambda) {
            (PathModel::DensityCompensated { .. }, Some(l)) => {
                let value = l
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad lambda {l:?}")))?;
                PathModel::density(value)
            }
            (_, Some(_)) => Err(Error::InvalidParameter(format!(
                "path model {kind:?} takes no lambda"
            ))),
            (m, None) => Ok(m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathResult {
    pub length: f64,
    pub edge_part: f64,
    pub compensation_part: f64,
}

impl PathResult {
    fn new(edge_part: f64, compensation_part: f64) -> Self {
        PathResult {
            length: edge_part + compensation_part,
            edge_part,
            compensation_part,
        }
    }
}

/// Weight of the is-a edge between adjacent `x` and `y`.
pub fn edge_weight(t: &Taxonomy, x: ConceptId, y: ConceptId) -> Result<f64> {
    let nx = t.neighbor_count(x)?;
    let ny = t.neighbor_count(y)?;
    let adjacent = t.node(x).parents.contains(&y) || t.node(y).parents.contains(&x);
    if !adjacent {
        return Err(Error::NotAdjacent(
            t.key(x)?.to_owned(),
            t.key(y)?.to_owned(),
        ));
    }
    Ok(weight_from_degrees(nx, ny))
}

fn weight_from_degrees(nx: usize, ny: usize) -> f64 {
    let spread = WEIGHT_MAX - WEIGHT_MIN;
    WEIGHT_MAX - spread / (2.0 * nx as f64) - spread / (2.0 * ny as f64)
}

fn weighted_length(t: &Taxonomy, conn: &Connection) -> f64 {
    conn.nodes
        .windows(2)
        .map(|w| {
            let (x, y) = (t.node(w[0]), t.node(w[1]));
            weight_from_degrees(
                x.parents.len() + x.children.len(),
                y.parents.len() + y.children.len(),
            )
        })
        .sum()
}

/// Sum of edge weights along the edge-count-minimal path.
pub fn path_edge_weighted(t: &Taxonomy, c1: ConceptId, c2: ConceptId) -> Result<PathResult> {
    let conn = t.connection(c1, c2)?;
    Ok(PathResult::new(weighted_length(t, &conn), 0.0))
}

/// Subsumers of either endpoint lying on their shortest path, plus the LCS.
fn area_subsumers_of(conn: &Connection) -> Vec<ConceptId> {
    let n = conn.nodes.len();
    if n == 1 {
        return conn.nodes.clone();
    }
    // Interior nodes of an up-then-down path are proper subsumers of one of
    // the endpoints; an endpoint only counts when it is itself the LCS.
    let mut out: Vec<ConceptId> = conn.nodes[1..n - 1].to_vec();
    if !out.contains(&conn.lcs) {
        out.push(conn.lcs);
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn area_subsumers(t: &Taxonomy, c1: ConceptId, c2: ConceptId) -> Result<Vec<ConceptId>> {
    Ok(area_subsumers_of(&t.connection(c1, c2)?))
}

fn area_density_of(t: &Taxonomy, conn: &Connection) -> usize {
    area_subsumers_of(conn)
        .into_iter()
        .map(|s| t.node(s).children.len())
        .sum()
}

pub fn area_density(t: &Taxonomy, c1: ConceptId, c2: ConceptId) -> Result<usize> {
    Ok(area_density_of(t, &t.connection(c1, c2)?))
}

/// Depth of the centroid of the triangle (c1, lcs, c2).
fn area_depth_of(t: &Taxonomy, c1: ConceptId, c2: ConceptId, conn: &Connection) -> f64 {
    let sum = t.depth_of(c1) + t.depth_of(conn.lcs) + t.depth_of(c2);
    sum as f64 / 3.0
}

pub fn area_depth(t: &Taxonomy, c1: ConceptId, c2: ConceptId) -> Result<f64> {
    let conn = t.connection(c1, c2)?;
    Ok(area_depth_of(t, c1, c2, &conn))
}

fn compensation_of(
    t: &Taxonomy,
    c1: ConceptId,
    c2: ConceptId,
    conn: &Connection,
    lambda: Lambda,
) -> f64 {
    if c1 == c2 {
        return 0.0;
    }
    let depth = area_depth_of(t, c1, c2, conn);
    // Distinct concepts always have a non-root endpoint, so depth > 0.
    debug_assert!(depth > 0.0);
    area_density_of(t, conn) as f64 / depth * lambda.get()
}

pub fn path_compensation(t: &Taxonomy, c1: ConceptId, c2: ConceptId, lambda: f64) -> Result<f64> {
    let lambda = Lambda::new(lambda)?;
    let conn = t.connection(c1, c2)?;
    Ok(compensation_of(t, c1, c2, &conn, lambda))
}

/// Path length under `model`, together with the connection it was measured on.
pub fn measure_path(
    t: &Taxonomy,
    c1: ConceptId,
    c2: ConceptId,
    model: PathModel,
) -> Result<(PathResult, Connection)> {
    let conn = t.connection(c1, c2)?;
    let result = match model {
        PathModel::EdgeCounting => PathResult::new(conn.edge_count() as f64, 0.0),
        PathModel::EdgeWeighted => PathResult::new(weighted_length(t, &conn), 0.0),
        PathModel::DensityCompensated { lambda } => PathResult::new(
            conn.edge_count() as f64,
            compensation_of(t, c1, c2, &conn, lambda),
        ),
    };
    Ok((result, conn))
}

pub fn path_length(
    t: &Taxonomy,
    c1: ConceptId,
    c2: ConceptId,
    model: PathModel,
) -> Result<PathResult> {
    measure_path(t, c1, c2, model).map(|(r, _)| r)
}
