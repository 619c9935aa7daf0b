//! Random-weight message passing encoder (plain MPNN and the two
//! substructure-aware variants) and the distance-threshold isomorphism test.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::EncoderError;
use crate::features::{StructuralFeatures, Vocabulary};
use crate::graph::Graph;
use crate::rng::seeded;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Mpnn,
    GsnV,
    GsnE,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Mpnn => "mpnn",
            Variant::GsnV => "gsn_v",
            Variant::GsnE => "gsn_e",
        }
    }

    pub fn needs_features(self) -> bool {
        self != Variant::Mpnn
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "mpnn" => Ok(Variant::Mpnn),
            "gsn_v" => Ok(Variant::GsnV),
            "gsn_e" => Ok(Variant::GsnE),
            other => Err(format!(
                "unknown variant '{other}' (expected mpnn, gsn_v or gsn_e)"
            )),
        }
    }
}

pub const DEFAULT_EPSILON: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EncoderConfig {
    pub variant: Variant,
    pub layers: usize,
    pub width: usize,
    pub mlp_depth: usize,
    pub seed: u64,
    /// Threshold on `||r1 - r2|| / n`.
    pub epsilon: f64,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            variant: Variant::GsnE,
            layers: 2,
            width: 64,
            mlp_depth: 2,
            seed: 0,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

impl EncoderConfig {
    pub fn validate(&self) -> Result<(), EncoderError> {
        if self.layers == 0 || self.width == 0 || self.mlp_depth == 0 {
            return Err(EncoderError::Config(
                "layers, width and mlp_depth must be at least 1".into(),
            ));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(EncoderError::Config(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Linear {
    input: usize,
    output: usize,
    /// Row-major `output x input`.
    weight: Vec<f64>,
    bias: Vec<f64>,
}

impl Linear {
    fn glorot(input: usize, output: usize, rng: &mut crate::rng::Rng) -> Self {
        let a = (6.0 / (input + output) as f64).sqrt();
        let weight = (0..input * output).map(|_| rng.gen_range(-a..=a)).collect();
        let bias = (0..output).map(|_| rng.gen_range(-a..=a)).collect();
        Linear {
            input,
            output,
            weight,
            bias,
        }
    }

    fn apply(&self, x: &[f64], out: &mut Vec<f64>) {
        debug_assert_eq!(x.len(), self.input);
        out.clear();
        for o in 0..self.output {
            let row = &self.weight[o * self.input..(o + 1) * self.input];
            let mut acc = self.bias[o];
            for (w, v) in row.iter().zip(x) {
                acc += w * v;
            }
            out.push(acc);
        }
    }
}

/// Linear layers with ReLU in between (none after the last).
#[derive(Clone, Debug)]
struct Mlp(Vec<Linear>);

impl Mlp {
    fn new(input: usize, width: usize, depth: usize, rng: &mut crate::rng::Rng) -> Self {
        let mut layers = Vec::with_capacity(depth);
        let mut d = input;
        for _ in 0..depth {
            layers.push(Linear::glorot(d, width, rng));
            d = width;
        }
        Mlp(layers)
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut cur = x.to_vec();
        let mut next = Vec::new();
        for (i, l) in self.0.iter().enumerate() {
            l.apply(&cur, &mut next);
            if i + 1 < self.0.len() {
                next.iter_mut().for_each(|v| *v = v.max(0.0));
            }
            std::mem::swap(&mut cur, &mut next);
        }
        cur
    }
}

/// Lexicographic order of vectors under `f64::total_cmp`.
fn cmp_vec(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Sum of vectors taken in sorted order, so the result depends only on the
/// multiset of inputs and not on vertex numbering.
fn sorted_sum(mut vs: Vec<Vec<f64>>, width: usize) -> Vec<f64> {
    vs.sort_by(|a, b| cmp_vec(a, b));
    let mut acc = vec![0.0; width];
    for v in &vs {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
    }
    acc
}

/// Vocabularies shared by every graph encoded with one set of weights.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct InputVocab {
    pub vertex_labels: Vec<u32>,
    /// Empty when no graph carries edge labels.
    pub edge_labels: Vec<u32>,
    pub vertex_ids: Vocabulary,
    pub edge_ids: Vocabulary,
}

impl InputVocab {
    /// Builds the vocabularies over a compared set of graphs. `features` must
    /// be given (one per graph) for the substructure-aware variants.
    pub fn build(
        graphs: &[&Graph],
        features: Option<&[&StructuralFeatures]>,
    ) -> Result<Self, EncoderError> {
        let mut vl: Vec<u32> = graphs
            .iter()
            .flat_map(|g| (0..g.n()).map(|v| g.vertex_label(v)))
            .collect();
        vl.sort_unstable();
        vl.dedup();
        let mut el: Vec<u32> = graphs
            .iter()
            .filter_map(|g| g.edge_labels())
            .flat_map(|m| m.values().copied())
            .collect();
        el.sort_unstable();
        el.dedup();
        let (vertex_ids, edge_ids) = match features {
            Some(fs) => (Vocabulary::for_vertices(fs)?, Vocabulary::for_edges(fs)?),
            None => Default::default(),
        };
        Ok(InputVocab {
            vertex_labels: vl,
            edge_labels: el,
            vertex_ids,
            edge_ids,
        })
    }

    fn label_one_hot(values: &[u32], x: u32) -> Vec<f64> {
        let mut out = vec![0.0; values.len()];
        if let Ok(i) = values.binary_search(&x) {
            out[i] = 1.0;
        }
        out
    }
}

/// Per-graph inputs after one-hot encoding.
struct Prepared {
    h0: Vec<Vec<f64>>,
    /// `arc[v][j]` describes the message from `neighbors(v)[j]` into `v`:
    /// edge label plus, for `gsn_e`, the identifier of that arc.
    arc: Vec<Vec<Vec<f64>>>,
    vid: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Representation {
    pub vector: Vec<f64>,
    pub graph_id: Option<String>,
    pub n: usize,
}

impl Representation {
    /// Euclidean distance divided by the vertex count.
    pub fn scaled_distance(&self, other: &Representation) -> f64 {
        let d: f64 = self
            .vector
            .iter()
            .zip(&other.vector)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        d / self.n.max(other.n).max(1) as f64
    }
}

/// Encoder with weights drawn once from the configured seed.
#[derive(Clone, Debug)]
pub struct Encoder {
    cfg: EncoderConfig,
    vocab: InputVocab,
    messages: Vec<Mlp>,
    updates: Vec<Mlp>,
    readout: Mlp,
}

impl Encoder {
    pub fn new(cfg: EncoderConfig, vocab: InputVocab) -> Result<Self, EncoderError> {
        cfg.validate()?;
        let mut rng = seeded(cfg.seed);
        let h0 = vocab.vertex_labels.len().max(1);
        let e = vocab.edge_labels.len();
        let ids = match cfg.variant {
            Variant::Mpnn => 0,
            Variant::GsnV => 2 * vocab.vertex_ids.width(),
            Variant::GsnE => vocab.edge_ids.width(),
        };
        let mut messages = Vec::new();
        let mut updates = Vec::new();
        let mut d = h0;
        for _ in 0..cfg.layers {
            messages.push(Mlp::new(
                2 * d + ids + e,
                cfg.width,
                cfg.mlp_depth,
                &mut rng,
            ));
            updates.push(Mlp::new(d + cfg.width, cfg.width, cfg.mlp_depth, &mut rng));
            d = cfg.width;
        }
        let readout = Mlp::new(cfg.width, cfg.width, cfg.mlp_depth, &mut rng);
        Ok(Encoder {
            cfg,
            vocab,
            messages,
            updates,
            readout,
        })
    }

    pub fn config(&self) -> &EncoderConfig {
        &self.cfg
    }

    fn prepare(&self, g: &Graph, f: Option<&StructuralFeatures>) -> Result<Prepared, EncoderError> {
        let variant = self.cfg.variant;
        if variant.needs_features() && f.is_none() {
            return Err(EncoderError::MissingFeatures(variant.as_str()));
        }
        let h0 = (0..g.n())
            .map(|v| {
                if self.vocab.vertex_labels.is_empty() {
                    vec![1.0]
                } else {
                    InputVocab::label_one_hot(&self.vocab.vertex_labels, g.vertex_label(v))
                }
            })
            .collect();
        let vid = match (variant, f) {
            (Variant::GsnV, Some(f)) => f
                .vertex_counts
                .iter()
                .map(|r| self.vocab.vertex_ids.one_hot(r))
                .collect::<Result<_, _>>()?,
            _ => Vec::new(),
        };
        let mut arc = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let mut row = Vec::with_capacity(g.degree(v));
            for &u in g.neighbors(v) {
                let mut x = if self.vocab.edge_labels.is_empty() {
                    Vec::new()
                } else {
                    InputVocab::label_one_hot(&self.vocab.edge_labels, g.edge_label(u, v))
                };
                if let (Variant::GsnE, Some(f)) = (variant, f) {
                    let counts = f.edge(u, v).expect("features match the graph");
                    x.extend(self.vocab.edge_ids.one_hot(counts)?);
                }
                row.push(x);
            }
            arc.push(row);
        }
        Ok(Prepared { h0, arc, vid })
    }

    /// Forward pass: two message/update rounds, sum readout, final MLP.
    pub fn encode(
        &self,
        g: &Graph,
        f: Option<&StructuralFeatures>,
    ) -> Result<Representation, EncoderError> {
        let p = self.prepare(g, f)?;
        let mut h = p.h0;
        let width = self.cfg.width;
        for (layer, (msg, up)) in self.messages.iter().zip(&self.updates).enumerate() {
            let mut next = Vec::with_capacity(g.n());
            for v in 0..g.n() {
                let incoming: Vec<Vec<f64>> = g
                    .neighbors(v)
                    .iter()
                    .enumerate()
                    .map(|(j, &u)| {
                        let mut x = Vec::new();
                        x.extend_from_slice(&h[v]);
                        x.extend_from_slice(&h[u]);
                        if !p.vid.is_empty() {
                            x.extend_from_slice(&p.vid[v]);
                            x.extend_from_slice(&p.vid[u]);
                        }
                        x.extend_from_slice(&p.arc[v][j]);
                        msg.apply(&x)
                    })
                    .collect();
                let m = sorted_sum(incoming, width);
                let mut x = h[v].clone();
                x.extend(m);
                next.push(up.apply(&x));
            }
            if next.iter().flatten().any(|x| !x.is_finite()) {
                return Err(EncoderError::NonFinite { layer });
            }
            h = next;
        }
        let pooled = sorted_sum(h, width);
        let vector = self.readout.apply(&pooled);
        if vector.iter().any(|x| !x.is_finite()) {
            return Err(EncoderError::NonFinite {
                layer: self.cfg.layers,
            });
        }
        Ok(Representation {
            vector,
            graph_id: g.name().map(str::to_string),
            n: g.n(),
        })
    }
}

/// Convenience: vocabulary over `g` alone and one forward pass.
pub fn encode(
    g: &Graph,
    f: Option<&StructuralFeatures>,
    cfg: &EncoderConfig,
) -> Result<Representation, EncoderError> {
    let feats: Option<Vec<&StructuralFeatures>> = f.map(|f| vec![f]);
    let vocab = InputVocab::build(&[g], feats.as_deref())?;
    Encoder::new(cfg.clone(), vocab)?.encode(g, f)
}

/// Result of comparing two graphs under one or more weight draws.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairOutcome {
    /// True when some seed separates the graphs (deemed non-isomorphic).
    pub distinguished: bool,
    /// Scaled distance per seed.
    pub distances: Vec<f64>,
}

/// Encodes both graphs with shared vocabulary and weights for each seed.
pub fn compare_with_seeds(
    g1: &Graph,
    g2: &Graph,
    f1: Option<&StructuralFeatures>,
    f2: Option<&StructuralFeatures>,
    cfg: &EncoderConfig,
    seeds: &[u64],
) -> Result<PairOutcome, EncoderError> {
    let feats: Option<Vec<&StructuralFeatures>> = match (f1, f2) {
        (Some(a), Some(b)) => Some(vec![a, b]),
        _ => None,
    };
    let vocab = InputVocab::build(&[g1, g2], feats.as_deref())?;
    let mut distances = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let enc = Encoder::new(
            EncoderConfig {
                seed,
                ..cfg.clone()
            },
            vocab.clone(),
        )?;
        let (r1, r2) = (enc.encode(g1, f1)?, enc.encode(g2, f2)?);
        distances.push(r1.scaled_distance(&r2));
    }
    Ok(PairOutcome {
        distinguished: distances.iter().any(|&d| d > cfg.epsilon),
        distances,
    })
}

/// True when the graphs are deemed non-isomorphic under `cfg.seed`.
pub fn gsn_isomorphism_test(
    g1: &Graph,
    g2: &Graph,
    f1: Option<&StructuralFeatures>,
    f2: Option<&StructuralFeatures>,
    cfg: &EncoderConfig,
) -> Result<bool, EncoderError> {
    Ok(compare_with_seeds(g1, g2, f1, f2, cfg, &[cfg.seed])?.distinguished)
}
