//! Knot in, invariant report out.

use crate::diagram::{extract_diagram, ExtractOptions, LinkDiagram};
use crate::error::{Error, Result};
use crate::geometry::{check_embedded, default_frames, golden_frames, sample, EmbeddingReport, ProjectionFrame, SampledCurve, FALLBACK_ATTEMPTS};
use crate::invariants::{report_for_diagram, InvariantReport};
use crate::knot::FourierKnot;

pub const DEFAULT_CHORD: f64 = 0.02;
pub const CHORD_HALVINGS: usize = 3;

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub chord: f64,
    /// How many times the chord is halved when the embedding check fails.
    pub halvings: usize,
    /// Frames tried first, in order.
    pub frames: Vec<ProjectionFrame>,
    /// Try golden-angle frames after `frames` fail.
    pub fallback: bool,
    pub extract: ExtractOptions,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            chord: DEFAULT_CHORD,
            halvings: CHORD_HALVINGS,
            frames: default_frames(),
            fallback: true,
            extract: ExtractOptions::default(),
        }
    }
}

/// Everything produced along the way, for callers that want more than the report.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub curve: SampledCurve,
    pub embedding: EmbeddingReport,
    pub frame: ProjectionFrame,
    pub diagram: LinkDiagram,
    pub report: InvariantReport,
}

/// First frame that yields a generic diagram, together with that diagram.
pub fn generic_diagram(curve: &SampledCurve, opts: &PipelineOptions) -> Result<(ProjectionFrame, LinkDiagram)> {
    let fallback = if opts.fallback { golden_frames(FALLBACK_ATTEMPTS) } else { Vec::new() };
    let mut attempts = 0;
    let mut last = None;
    for frame in opts.frames.iter().chain(&fallback) {
        attempts += 1;
        match extract_diagram(curve, frame, &opts.extract) {
            Ok(d) => return Ok((*frame, d)),
            Err(e @ Error::NonGenericProjection(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    if !opts.fallback && attempts == 1 {
        return Err(last.expect("one failed attempt"));
    }
    Err(Error::NoGenericProjection { attempts })
}

/// Diagram and invariants of an already sampled curve that is known to be embedded.
pub fn analyze_curve(curve: SampledCurve, embedding: EmbeddingReport, opts: &PipelineOptions) -> Result<Analysis> {
    let (frame, diagram) = generic_diagram(&curve, opts)?;
    let mut report = report_for_diagram(&diagram)?;
    let d = frame.direction();
    report.frame_direction = Some([d.x, d.y, d.z]);
    report.chord = Some(embedding.chord_bound);
    Ok(Analysis { curve, embedding, frame, diagram, report })
}

/// Samples finely enough to certify embedding (halving the chord on failure),
/// then analyzes.
pub fn sample_embedded(knot: &FourierKnot, opts: &PipelineOptions) -> Result<(SampledCurve, EmbeddingReport)> {
    let knot = knot.normalize_traversal()?;
    let mut chord = opts.chord;
    let mut last = None;
    for _ in 0..=opts.halvings {
        let curve = sample(&knot, chord)?;
        let emb = check_embedded(&curve);
        if emb.embedded {
            return Ok((curve, emb));
        }
        last = Some(emb);
        chord /= 2.0;
    }
    let emb = last.expect("at least one attempt");
    Err(Error::NotEmbedded { clearance: emb.min_clearance, chord: emb.chord_bound })
}

pub fn analyze(knot: &FourierKnot, opts: &PipelineOptions) -> Result<Analysis> {
    let (curve, emb) = sample_embedded(knot, opts)?;
    analyze_curve(curve, emb, opts)
}

/// normalize → sample → certify embedding → generic projection → diagram →
/// invariants → identification.
pub fn full_report(knot: &FourierKnot) -> Result<InvariantReport> {
    analyze(knot, &PipelineOptions::default()).map(|a| a.report)
}
