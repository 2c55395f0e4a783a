//! Request handlers as plain functions over JSON values. The HTTP layer only
//! routes and maps [`ApiError`] to status codes.

use std::collections::HashMap;
use std::sync::Arc;

use coxflip_core::orbit::{label_aliases, SimpleBasis};
use coxflip_core::{
    apply_move, classify, scramble, solve, CoxeterGraph, Error, Family, Gf2Vector, GraphJson,
    SolveReport,
};
use serde::{Deserialize, Serialize};

/// Bases are precomputed up to this rank.
const PRECOMPUTED_RANK: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApiError {
    /// Unparseable or structurally wrong input.
    BadRequest(String),
    /// Well-formed input the engine rejects.
    Domain(String),
}

impl ApiError {
    pub fn status(&self) -> u16 {
        match self {
            ApiError::BadRequest(_) => 400,
            ApiError::Domain(_) => 422,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            ApiError::BadRequest(m) | ApiError::Domain(m) => m,
        }
    }
}

/// Engine errors are domain errors; syntax problems are caught before the
/// engine is called.
impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError::Domain(e.to_string())
    }
}

pub type ApiResult<T> = Result<T, ApiError>;

fn parse_body<'a, T: Deserialize<'a>>(body: &'a [u8]) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(e.to_string()))
}

fn parse_config(s: &str) -> ApiResult<Gf2Vector> {
    Gf2Vector::parse_bitstring(s).map_err(|e| ApiError::BadRequest(e.to_string()))
}

fn parse_family(s: &str) -> ApiResult<Family> {
    s.parse().map_err(|e: Error| ApiError::Domain(e.to_string()))
}

/// Shared read-only state: simple bases for every family up to
/// [`PRECOMPUTED_RANK`].
#[derive(Clone)]
pub struct Engine {
    bases: Arc<HashMap<(Family, usize), SimpleBasis>>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        let mut bases = HashMap::new();
        for f in [Family::A, Family::D, Family::E] {
            for n in f.min_rank()..=PRECOMPUTED_RANK {
                bases.insert((f, n), SimpleBasis::new(f, n).expect("family rank in range"));
            }
        }
        Self {
            bases: Arc::new(bases),
        }
    }

    fn basis(&self, family: Family, n: usize) -> ApiResult<SimpleBasis> {
        match self.bases.get(&(family, n)) {
            Some(b) => Ok(b.clone()),
            None => Ok(SimpleBasis::new(family, n)?),
        }
    }

    /// `GET /api/graph?family=&n=`.
    pub fn graph(&self, query: &HashMap<String, String>) -> ApiResult<GraphJson> {
        let field = |k: &str| {
            query
                .get(k)
                .ok_or_else(|| ApiError::BadRequest(format!("missing query parameter {k:?}")))
        };
        let family = parse_family(field("family")?)?;
        let n = field("n")?
            .parse::<usize>()
            .map_err(|e| ApiError::BadRequest(format!("n: {e}")))?;
        Ok(CoxeterGraph::build_family(family, n)?.to_json())
    }

    /// `POST /api/move`.
    pub fn apply_move(&self, body: &[u8]) -> ApiResult<MoveResponse> {
        let req: MoveRequest = parse_body(body)?;
        let g = CoxeterGraph::from_json(&req.graph)?;
        let config = parse_config(&req.config)?;
        let next = apply_move(&g, config, req.vertex)?;
        Ok(MoveResponse {
            config: next.to_bitstring(),
            changed: next != config,
        })
    }

    /// `POST /api/solve`.
    pub fn solve(&self, body: &[u8]) -> ApiResult<SolveReport> {
        let req: SolveRequest = parse_body(body)?;
        let g = CoxeterGraph::from_json(&req.graph)?;
        Ok(solve(&g, parse_config(&req.from)?, parse_config(&req.to)?)?)
    }

    /// `POST /api/classify`.
    pub fn classify(&self, body: &[u8]) -> ApiResult<ClassifyResponse> {
        let req: ClassifyRequest = parse_body(body)?;
        let family = parse_family(&req.family)?;
        let basis = self.basis(family, req.n)?;
        let config = parse_config(&req.config)?;
        if config.dim() != req.n {
            return Err(Error::Dimension {
                expected: req.n,
                actual: config.dim(),
            }
            .into());
        }
        let label = classify(family, req.n, config)?;
        Ok(ClassifyResponse {
            label: label.to_string(),
            aliases: label_aliases(family, req.n, label)
                .iter()
                .map(ToString::to_string)
                .collect(),
            weight: basis.weight(config)?,
            in_z: match family {
                Family::D => Some(basis.in_subspace_z(config)?),
                _ => None,
            },
        })
    }

    /// `POST /api/scramble`.
    pub fn scramble(&self, body: &[u8]) -> ApiResult<ScrambleResponse> {
        let req: ScrambleRequest = parse_body(body)?;
        let g = CoxeterGraph::from_json(&req.graph)?;
        let out = scramble(&g, parse_config(&req.config)?, req.k, req.seed)?;
        Ok(ScrambleResponse {
            config: out.to_bitstring(),
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRequest {
    pub graph: GraphJson,
    pub config: String,
    pub vertex: usize,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct MoveResponse {
    pub config: String,
    pub changed: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveRequest {
    pub graph: GraphJson,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyRequest {
    pub family: String,
    pub n: usize,
    pub config: String,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct ClassifyResponse {
    pub label: String,
    /// All names of the orbit when labels coincide, canonical first.
    pub aliases: Vec<String>,
    pub weight: u32,
    #[serde(rename = "in_Z", skip_serializing_if = "Option::is_none")]
    pub in_z: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScrambleRequest {
    pub graph: GraphJson,
    pub config: String,
    pub k: u64,
    pub seed: u64,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct ScrambleResponse {
    pub config: String,
}
