//! Combinatorial knot and link diagrams.
//!
//! A diagram is stored as signed Gauss words: each component is the cyclic
//! sequence of crossings met along its orientation, tagged over or under.
//! Crossings optionally carry the geometry they were extracted from.

mod codes;
mod extract;

pub use codes::{diagram_from_gauss, diagram_from_pd};
pub use extract::{extract_diagram, ExtractOptions, SignRule};

use std::collections::HashMap;

use nalgebra::Vector2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One visit of a component to a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub id: usize,
    pub sign: Sign,
    /// Curve parameter of the over strand, when extracted from a curve.
    pub over_param: Option<f64>,
    pub under_param: Option<f64>,
    /// Image-plane location.
    pub position: Option<Vector2<f64>>,
}

impl Crossing {
    pub fn combinatorial(id: usize, sign: Sign) -> Self {
        Crossing { id, sign, over_param: None, under_param: None, position: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkDiagram {
    components: Vec<Vec<Passage>>,
    /// Sorted by id.
    crossings: Vec<Crossing>,
}

impl LinkDiagram {
    /// Validates that every crossing is visited exactly once over and once
    /// under and that every visited crossing exists.
    pub fn new(components: Vec<Vec<Passage>>, mut crossings: Vec<Crossing>) -> Result<Self> {
        crossings.sort_by_key(|c| c.id);
        if crossings.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::MalformedGauss("duplicate crossing id".into()));
        }
        if components.is_empty() {
            return Err(Error::MalformedGauss("no components".into()));
        }
        let mut seen: HashMap<usize, (u32, u32)> = crossings.iter().map(|c| (c.id, (0, 0))).collect();
        for p in components.iter().flatten() {
            let entry = seen
                .get_mut(&p.crossing)
                .ok_or_else(|| Error::MalformedGauss(format!("unknown crossing {}", p.crossing)))?;
            if p.over {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
        if let Some((id, _)) = seen.iter().find(|(_, &v)| v != (1, 1)) {
            return Err(Error::MalformedGauss(format!("crossing {id} is not visited once over and once under")));
        }
        Ok(LinkDiagram { components, crossings })
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        LinkDiagram { components: vec![Vec::new()], crossings: Vec::new() }
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn index_of(&self, id: usize) -> Result<usize> {
        self.crossings.binary_search_by_key(&id, |c| c.id).map_err(|_| Error::UnknownCrossing(id))
    }

    pub fn crossing(&self, id: usize) -> Result<&Crossing> {
        self.index_of(id).map(|i| &self.crossings[i])
    }

    /// Components of the (over, under) strands at crossing `id`.
    pub fn crossing_components(&self, id: usize) -> Result<(usize, usize)> {
        self.index_of(id)?;
        let mut over = None;
        let mut under = None;
        for (k, comp) in self.components.iter().enumerate() {
            for p in comp.iter().filter(|p| p.crossing == id) {
                if p.over {
                    over = Some(k);
                } else {
                    under = Some(k);
                }
            }
        }
        Ok((over.expect("validated"), under.expect("validated")))
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Exchanges over and under at one crossing, negating its sign.
    pub fn switch_crossing(&self, id: usize) -> Result<LinkDiagram> {
        let idx = self.index_of(id)?;
        let mut out = self.clone();
        for p in out.components.iter_mut().flatten().filter(|p| p.crossing == id) {
            p.over = !p.over;
        }
        let c = &mut out.crossings[idx];
        c.sign = c.sign.flip();
        std::mem::swap(&mut c.over_param, &mut c.under_param);
        Ok(out)
    }

    /// Oriented smoothing of a crossing of a knot diagram; always yields two
    /// components. The first keeps the original basepoint.
    pub fn smooth_crossing(&self, id: usize) -> Result<LinkDiagram> {
        let idx = self.index_of(id)?;
        if self.components.len() != 1 {
            return Err(Error::NotAKnot(self.components.len()));
        }
        let word = &self.components[0];
        let mut hits = word.iter().enumerate().filter(|(_, p)| p.crossing == id).map(|(k, _)| k);
        let (i, j) = (hits.next().expect("validated"), hits.next().expect("validated"));
        let inner: Vec<Passage> = word[i + 1..j].to_vec();
        let outer: Vec<Passage> = word[..i].iter().chain(&word[j + 1..]).copied().collect();
        let mut crossings = self.crossings.clone();
        crossings.remove(idx);
        Ok(LinkDiagram { components: vec![outer, inner], crossings })
    }

    /// Rotates the traversal of component `k` to start `offset` passages later.
    pub fn with_basepoint(&self, component: usize, offset: usize) -> LinkDiagram {
        let mut out = self.clone();
        let comp = &mut out.components[component];
        if !comp.is_empty() {
            let n = comp.len();
            comp.rotate_left(offset % n);
        }
        out
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let mut out = self.clone();
        for p in out.components.iter_mut().flatten() {
            p.over = !p.over;
        }
        for c in &mut out.crossings {
            c.sign = c.sign.flip();
            std::mem::swap(&mut c.over_param, &mut c.under_param);
        }
        out
    }

    /// Drops geometric data, keeping the Gauss words and signs.
    pub fn combinatorial(&self) -> LinkDiagram {
        LinkDiagram {
            components: self.components.clone(),
            crossings: self.crossings.iter().map(|c| Crossing::combinatorial(c.id, c.sign)).collect(),
        }
    }

    /// Makes crossing `id` positive, switching it if needed.
    pub fn with_sign(&self, id: usize, sign: Sign) -> Result<LinkDiagram> {
        if self.crossing(id)?.sign == sign {
            Ok(self.clone())
        } else {
            self.switch_crossing(id)
        }
    }

    /// Signed Gauss code, e.g. `O+1,U+2,O+3,U+1,O+2,U+3`; components are
    /// separated by `;`.
    pub fn gauss_code(&self) -> String {
        self.components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|p| {
                        let sign = self.crossing(p.crossing).expect("validated").sign;
                        format!(
                            "{}{}{}",
                            if p.over { 'O' } else { 'U' },
                            if sign == Sign::Positive { '+' } else { '-' },
                            p.crossing
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// PD code with edges labelled consecutively along each component and
    /// each crossing read counterclockwise from the incoming under edge.
    /// Crossingless components are not representable and are omitted.
    pub fn pd_code(&self) -> String {
        // (in-edge, out-edge) of every passage
        let mut edges: HashMap<(usize, bool), (usize, usize)> = HashMap::new();
        let mut next_label = 1;
        for comp in &self.components {
            let m = comp.len();
            for (k, p) in comp.iter().enumerate() {
                let label_in = next_label + k;
                let label_out = next_label + (k + 1) % m;
                edges.insert((p.crossing, p.over), (label_in, label_out));
            }
            next_label += m;
        }
        self.crossings
            .iter()
            .map(|c| {
                let (a, cc) = edges[&(c.id, false)];
                let (over_in, over_out) = edges[&(c.id, true)];
                let (b, d) = match c.sign {
                    Sign::Positive => (over_out, over_in),
                    Sign::Negative => (over_in, over_out),
                };
                format!("X[{a},{b},{cc},{d}]")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Right-handed trefoil, all crossings positive.
    pub const TREFOIL_PD: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
    pub const FIGURE_EIGHT_PD: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    pub fn trefoil() -> LinkDiagram {
        diagram_from_pd(TREFOIL_PD).unwrap()
    }

    pub fn figure_eight() -> LinkDiagram {
        diagram_from_pd(FIGURE_EIGHT_PD).unwrap()
    }

    /// One positive Reidemeister-I curl.
    pub fn curl() -> LinkDiagram {
        LinkDiagram::new(
            vec![vec![Passage { crossing: 1, over: true }, Passage { crossing: 1, over: false }]],
            vec![Crossing::combinatorial(1, Sign::Positive)],
        )
        .unwrap()
    }
}
