//! Dynamic network models with a tunable core/periphery structure. Each
//! model grows a network one timestamp at a time and doubles as an
//! evolution trace for integration processes.

mod ba;
mod degree;
mod jr;
mod onion;
mod richclub;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Serialize, Serializer};

pub use ba::ba_step;
pub use degree::{calibrate_gamma, DegreeDistribution};
pub use jr::jr_step;
pub use onion::{onion_join_probability, onion_step};
pub use richclub::{degree_class_probabilities, richclub_alpha, richclub_step};

use crate::dynamics::{EvolutionTrace, Expansion, IdAllocator};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rng::{self, SimRng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Ba,
    Jr { p: f64 },
    RichClub,
    Onion,
}

impl Model {
    /// BA, JR for p in {0.25, 0.5, 1}, rich-club and onion.
    pub fn table() -> [Model; 6] {
        [
            Model::Ba,
            Model::Jr { p: 0.25 },
            Model::Jr { p: 0.5 },
            Model::Jr { p: 1.0 },
            Model::RichClub,
            Model::Onion,
        ]
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Ba => f.write_str("ba"),
            Model::Jr { p } => write!(f, "jr{p}"),
            Model::RichClub => f.write_str("richclub"),
            Model::Onion => f.write_str("onion"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    /// `ba`, `jr` (p = 0.5), `jr<p>`, `richclub` or `onion`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "ba" => Model::Ba,
            "richclub" | "rich-club" => Model::RichClub,
            "onion" => Model::Onion,
            "jr" => Model::Jr { p: 0.5 },
            _ => match s.strip_prefix("jr").map(str::parse::<f64>) {
                Some(Ok(p)) => Model::Jr { p },
                _ => return Err(Error::InvalidParameter(format!("unknown model '{s}'"))),
            },
        })
    }
}

impl Serialize for Model {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub model: Model,
    /// Target average degree.
    pub d: u32,
    /// Size of the initial network handed to the newcomer.
    pub n: usize,
    /// Vertices added per timestamp.
    pub growth: usize,
    pub seed: u64,
    /// Length of the seed cycle.
    pub n0: u32,
}

impl ModelParams {
    pub fn new(model: Model, d: u32) -> Self {
        Self {
            model,
            d,
            n: 500,
            growth: 1,
            seed: 0,
            n0: 10,
        }
    }

    pub fn size(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn growth(mut self, growth: usize) -> Self {
        self.growth = growth;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.d < 2 {
            return bad(format!("average degree must be at least 2, got {}", self.d));
        }
        if self.n0 < 3 {
            return bad(format!("seed cycle needs at least 3 vertices, got {}", self.n0));
        }
        if self.n < self.n0 as usize {
            return bad(format!("size {} below the seed cycle {}", self.n, self.n0));
        }
        if self.growth == 0 {
            return bad("growth rate must be at least 1".into());
        }
        if let Model::Jr { p } = self.model {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("JR probability {p} outside [0, 1]"));
            }
        }
        Ok(())
    }

    /// JR sample size `round(d / 4p)`, at least 1.
    pub fn jr_m(&self) -> usize {
        match self.model {
            Model::Jr { p } if p > 0.0 => ((self.d as f64 / (4.0 * p)).round() as usize).max(1),
            _ => 1,
        }
    }
}

/// Working copy of a network that records every change as an expansion.
#[derive(Clone)]
pub(crate) struct Builder {
    pub h: Graph,
    pub f: Expansion,
    /// Index of the newcomer, which no model may touch.
    pub avoid: Option<usize>,
}

impl Builder {
    pub fn new(g: &Graph, newcomer: Option<VertexId>) -> Self {
        Self {
            avoid: newcomer.and_then(|u| g.index_of(u)),
            h: g.clone(),
            f: Expansion::new(),
        }
    }

    pub fn allowed(&self, i: usize) -> bool {
        Some(i) != self.avoid
    }

    pub fn candidates(&self) -> Vec<usize> {
        (0..self.h.vertex_count()).filter(|&i| self.allowed(i)).collect()
    }

    pub fn add_vertex(&mut self, id: VertexId) -> usize {
        self.f.new_vertices.insert(id);
        self.h.add_vertex(id)
    }

    pub fn link(&mut self, a: usize, b: usize) -> bool {
        if a == b || !self.h.add_edge_indexed(a, b) {
            return false;
        }
        let (x, y) = (self.h.id_at(a), self.h.id_at(b));
        if self.f.removed_edges.contains(&order(x, y)) {
            self.f.removed_edges.remove(&order(x, y));
        } else {
            self.f.add_edge(x, y);
        }
        true
    }

    pub fn sever(&mut self, a: usize, b: usize) -> bool {
        if !self.h.remove_edge_indexed(a, b) {
            return false;
        }
        let (x, y) = (self.h.id_at(a), self.h.id_at(b));
        if !self.f.new_edges.remove(&order(x, y)) {
            self.f.remove_edge(x, y);
        }
        true
    }

    /// Edges away from the newcomer.
    pub fn severable(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.h.edge_count());
        for x in 0..self.h.vertex_count() {
            if !self.allowed(x) {
                continue;
            }
            for &y in self.h.neighbor_indices(x) {
                let y = y as usize;
                if x < y && self.allowed(y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn pick<R: rand::Rng>(&self, rng: &mut R) -> Result<usize> {
        self.candidates().choose(rng).copied().ok_or(Error::EmptyGraph)
    }

    pub fn finish(mut self) -> Expansion {
        self.f.normalize();
        self.f
    }
}

fn order(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A seeded model instance: grows its own initial network and then keeps
/// producing one expansion per timestamp.
#[derive(Debug, Clone)]
pub struct Generator {
    params: ModelParams,
    rng: SimRng,
    ids: IdAllocator,
    q: Option<DegreeDistribution>,
    steps_left: Option<usize>,
}

impl Generator {
    pub fn new(params: ModelParams) -> Result<Self> {
        params.validate()?;
        let q = match params.model {
            Model::Onion => Some(DegreeDistribution::for_network(params.d, params.n)?),
            _ => None,
        };
        Ok(Self {
            params,
            rng: rng::stream(params.seed, 1),
            ids: IdAllocator::new(),
            q,
            steps_left: None,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Ends the trace after `steps` more timestamps.
    pub fn limit(mut self, steps: usize) -> Self {
        self.steps_left = Some(steps);
        self
    }

    /// One timestamp adding `ell` vertices, never touching `newcomer`.
    pub fn step(&mut self, g: &Graph, newcomer: Option<VertexId>, ell: usize) -> Result<Expansion> {
        self.ids.sync(g, newcomer.unwrap_or(VertexId(0)));
        let p = self.params;
        match p.model {
            Model::Ba => ba_step(g, newcomer, p.d, ell, &mut self.rng, &mut self.ids),
            Model::Jr { p: prob } => {
                jr_step(g, newcomer, prob, p.jr_m(), ell, &mut self.rng, &mut self.ids)
            }
            Model::RichClub => {
                let alpha = richclub_alpha(p.n, p.d);
                richclub_step(g, newcomer, alpha, ell, &mut self.rng, &mut self.ids)
            }
            Model::Onion => {
                let q = self.q.as_ref().expect("onion generators carry q");
                onion_step(g, newcomer, q, ell, &mut self.rng, &mut self.ids)
            }
        }
    }

    /// Single-vertex timestamps until `g` has `target` vertices.
    pub fn grow(&mut self, g: &mut Graph, target: usize) -> Result<()> {
        while g.vertex_count() < target {
            let f = self.step(g, None, 1)?;
            f.apply(g);
        }
        Ok(())
    }

    /// The seed cycle grown to the configured size.
    pub fn build_initial(&mut self) -> Result<Graph> {
        let mut g = Graph::cycle(self.params.n0);
        self.grow(&mut g, self.params.n)?;
        Ok(g)
    }
}

impl EvolutionTrace for Generator {
    fn next_expansion(&mut self, g: &Graph, newcomer: VertexId, _: &[VertexId]) -> Result<Option<Expansion>> {
        if let Some(left) = self.steps_left.as_mut() {
            if *left == 0 {
                return Ok(None);
            }
            *left -= 1;
        }
        let ell = self.params.growth;
        self.step(g, Some(newcomer), ell).map(Some)
    }
}

/// The initial network of `params`, grown from its seed cycle.
pub fn build_initial(params: &ModelParams) -> Result<Graph> {
    Generator::new(*params)?.build_initial()
}
