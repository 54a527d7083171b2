//! Single-party and multi-party end-to-end review pipelines and their
//! equivalence harness.
//!
//! Both pipelines turn a large unlabeled corpus into predicted positives
//! by sampling a training set, labeling it, training a classifier, and
//! classifying everything:
//!
//! - **Single-party** ([`run_sped`]): the reviewing party labels the whole
//!   sample itself (it has oracle access to ground truth) and trains on
//!   all of it.
//! - **Multi-party** ([`run_mped`]): the sample belongs to a possibly
//!   adversarial producing party. The disclosure protocol runs on the
//!   sample; the reviewing party trains only on the disclosed, vetted
//!   points.
//!
//! The two pipelines share one seeded sampling procedure, so they see the
//! same sample. For learners that ignore redundant negatives — deleting
//! negatives other than the critical ones never changes the trained
//! classifier, a property the hard-margin trainers here have — the
//! disclosed subset trains the *identical* classifier, so the pipelines
//! return identical predictions no matter how the producing party behaves.
//! The first-feasible-vertex learner is a deliberate counterexample: its
//! output depends on which redundant negatives are present, and the
//! equivalence can break, which is exactly what makes it a useful negative
//! control.

use crate::dataset::{DatasetError, IndexSet, Label, LabeledDataset, Point};
use crate::kernel::{train_kernel_svm, KernelClassifier, KernelError, KernelSpec};
use crate::lp::{phase1_feasibility, Phase1};
use num_rational::BigRational;
use crate::protocol::{
    run_cpp_with, AliceStrategy, BobWins, ExactBackend, KernelBackend, ProtocolError,
    ProtocolTranscript, SeparabilityBackend,
};
use crate::rng::SplitMix64;
use crate::separability::check_separability;
use crate::svm::{train_hard_svm, SolverConfig, SvmError};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Errors from pipeline construction and runs.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid pipeline configuration: {reason}")]
    InvalidConfig { reason: String },
    #[error("requested a sample of {requested} from a universe of {available}")]
    SampleTooLarge { requested: usize, available: usize },
    #[error("training data is not separable under the configured learner")]
    NotSeparable,
    #[error("trained classifier contradicts the disclosed label of point {index}")]
    InconsistentClassifier { index: usize },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Separability(#[from] crate::separability::SeparabilityError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Svm(#[from] SvmError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// A corpus with ground-truth labels held behind an oracle role.
///
/// The points are public to every pipeline role; the labels represent
/// what a human reviewer *would* say and are only consulted where a
/// pipeline step grants that access (labeling the sample, hand-label
/// requests inside the protocol).
#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    data: LabeledDataset,
}

impl Universe {
    pub fn new(data: LabeledDataset) -> Self {
        Universe { data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn points(&self) -> &[Point] {
        self.data.points()
    }

    /// Ground-truth label of one point (the labeling-oracle role).
    pub fn hidden_label(&self, i: usize) -> Label {
        self.data.label(i)
    }

    /// The underlying labeled dataset (owner/oracle role).
    pub fn dataset(&self) -> &LabeledDataset {
        &self.data
    }

    /// Indices whose hidden label is positive.
    pub fn true_positives(&self) -> IndexSet {
        self.data.positives()
    }
}

/// Which classifier the pipelines train.
#[derive(Debug, Clone, PartialEq)]
pub enum LearnerSpec {
    /// Exact-gated hard-margin maximization in input space.
    HardSvm,
    /// Hard-margin maximization in the feature space of a kernel.
    KernelSvm(KernelSpec),
    /// Returns the first basic feasible solution the exact phase-1 simplex
    /// reaches on the margin-1 system, with one slack row per training
    /// point. Every row participates in driving out the artificial basis,
    /// so the landed vertex depends on which redundant negatives are
    /// present and in what order; it exists as a negative control for the
    /// pipeline-equivalence harness.
    FirstVertex,
}

impl LearnerSpec {
    /// Stable name for reports and logs.
    pub fn name(&self) -> &'static str {
        match self {
            LearnerSpec::HardSvm => "hard_svm",
            LearnerSpec::KernelSvm(_) => "kernel_svm",
            LearnerSpec::FirstVertex => "first_vertex",
        }
    }

    /// Whether retraining without redundant (non-critical) negatives is
    /// guaranteed to return the same classifier. This is the hypothesis
    /// that makes the two pipelines equivalent.
    pub fn ignores_redundant_negatives(&self) -> bool {
        !matches!(self, LearnerSpec::FirstVertex)
    }

    /// The separability notion matching the learner's feature space; the
    /// multi-party pipeline runs the disclosure protocol under this
    /// backend so the disclosed set is the right one for the learner.
    fn backend(&self, solver: &SolverConfig) -> Box<dyn SeparabilityBackend> {
        match self {
            LearnerSpec::HardSvm | LearnerSpec::FirstVertex => Box::new(ExactBackend),
            LearnerSpec::KernelSvm(spec) => Box::new(KernelBackend {
                spec: spec.clone(),
                config: solver.clone(),
            }),
        }
    }

    fn train(
        &self,
        data: &LabeledDataset,
        solver: &SolverConfig,
    ) -> Result<TrainedClassifier, PipelineError> {
        match self {
            LearnerSpec::HardSvm => {
                let s = train_hard_svm(data, solver)?;
                Ok(TrainedClassifier::Linear { w: s.w, b: s.b })
            }
            LearnerSpec::KernelSvm(spec) => {
                Ok(TrainedClassifier::Kernel(train_kernel_svm(data, spec, solver)?))
            }
            LearnerSpec::FirstVertex => first_vertex_separator(data),
        }
    }
}

/// The first-feasible-vertex rule: exact phase-1 simplex on the margin-1
/// slack system `y_i (d . x_i - c) - s_i = 1, s_i >= 0` over `v = (d, c)`
/// split into nonnegative parts. The returned separator is exactly
/// feasible, but *which* basic solution the pivoting lands on depends on
/// every row present and on the row order — exactly the sensitivity the
/// negative control is meant to exhibit.
fn first_vertex_separator(data: &LabeledDataset) -> Result<TrainedClassifier, PipelineError> {
    use num_traits::{One, ToPrimitive, Zero};

    if data.is_empty() {
        return Err(PipelineError::NotSeparable);
    }
    let m = data.len();
    let dim = data.dim();
    let k = dim + 1;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let y = BigRational::from_integer(num_bigint::BigInt::from(data.label(i).as_i8()));
        let mut margin_row: Vec<BigRational> =
            data.point(i).coords().iter().map(|c| &y * c).collect();
        margin_row.push(-&y);
        let mut row = Vec::with_capacity(2 * k + m);
        row.extend(margin_row.iter().cloned());
        row.extend(margin_row.iter().map(|c| -c));
        for j in 0..m {
            row.push(if j == i {
                -BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        a.push(row);
    }
    let b = vec![BigRational::one(); m];
    match phase1_feasibility(&a, &b) {
        Phase1::Feasible { x } => {
            let v: Vec<BigRational> = (0..k).map(|j| &x[j] - &x[k + j]).collect();
            let w = v[..dim]
                .iter()
                .map(|c| c.to_f64().expect("direction fits in f64"))
                .collect();
            let b = -v[dim].to_f64().expect("threshold fits in f64");
            Ok(TrainedClassifier::Linear { w, b })
        }
        Phase1::Infeasible { .. } => Err(PipelineError::NotSeparable),
    }
}

/// Everything the pipelines need besides the universe and the reporting
/// strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Training-sample size; must satisfy `1 <= sample_size <= |U|`.
    pub sample_size: usize,
    /// Seed for the shared sampling generator.
    pub seed: u64,
    pub learner: LearnerSpec,
    pub solver: SolverConfig,
}

impl PipelineConfig {
    pub fn new(sample_size: usize, seed: u64, learner: LearnerSpec) -> Self {
        PipelineConfig {
            sample_size,
            seed,
            learner,
            solver: SolverConfig::default(),
        }
    }
}

/// A trained decision function from either pipeline.
#[derive(Debug, Clone)]
pub enum TrainedClassifier {
    Linear { w: Vec<f64>, b: f64 },
    Kernel(KernelClassifier),
}

impl TrainedClassifier {
    /// The decision value at a point.
    pub fn decision(&self, x: &Point) -> f64 {
        match self {
            TrainedClassifier::Linear { w, b } => {
                w.iter().zip(x.to_f64()).map(|(a, c)| a * c).sum::<f64>() + b
            }
            TrainedClassifier::Kernel(k) => k.decision(x),
        }
    }

    /// Classifies by decision sign; the boundary counts as positive.
    pub fn classify(&self, x: &Point) -> Label {
        if self.decision(x) < 0.0 {
            Label::Minus
        } else {
            Label::Plus
        }
    }

    /// JSON description of the classifier's parameters.
    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            TrainedClassifier::Linear { w, b } => serde_json::json!({
                "form": "linear",
                "w": w,
                "b": b,
            }),
            TrainedClassifier::Kernel(k) => serde_json::json!({
                "form": "kernel",
                "kernel": k.spec,
                "alphas": k.alphas,
                "offset": k.offset,
                "anchors": k.anchors.iter().map(Point::to_f64).collect::<Vec<_>>(),
            }),
        }
    }

    /// Parameter distance where both classifiers are linear; otherwise the
    /// largest decision-value gap over the given evaluation points.
    pub fn distance(&self, other: &TrainedClassifier, eval: &[Point]) -> f64 {
        match (self, other) {
            (
                TrainedClassifier::Linear { w: w1, b: b1 },
                TrainedClassifier::Linear { w: w2, b: b2 },
            ) if w1.len() == w2.len() => {
                let dw = w1
                    .iter()
                    .zip(w2)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                dw.max((b1 - b2).abs())
            }
            _ => eval
                .iter()
                .map(|p| (self.decision(p) - other.decision(p)).abs())
                .fold(0.0f64, f64::max),
        }
    }
}

/// Draws the shared training sample: uniform without replacement from the
/// seeded deterministic generator both pipelines use.
pub fn sample_training(
    u: &Universe,
    seed: u64,
    sample_size: usize,
) -> Result<IndexSet, PipelineError> {
    if sample_size == 0 {
        return Err(PipelineError::InvalidConfig {
            reason: "sample_size must be at least 1".into(),
        });
    }
    if sample_size > u.len() {
        return Err(PipelineError::SampleTooLarge {
            requested: sample_size,
            available: u.len(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    Ok(IndexSet::from_iter(
        rng.sample_without_replacement(u.len(), sample_size),
    ))
}

/// Result of a single-party run, with everything the caller might report.
#[derive(Debug, Clone)]
pub struct SpedRun {
    /// Universe indices that were sampled and labeled.
    pub sample: IndexSet,
    pub classifier: TrainedClassifier,
    /// Universe indices the classifier predicts positive.
    pub positives: IndexSet,
}

/// Result of a multi-party run.
#[derive(Debug, Clone)]
pub struct MpedRun {
    /// Universe indices that were sampled into the protocol.
    pub sample: IndexSet,
    /// The protocol conversation over the sample (indices in the
    /// transcript refer to positions within the sorted sample).
    pub transcript: ProtocolTranscript,
    /// Universe indices of the disclosed training points.
    pub disclosed: IndexSet,
    pub classifier: TrainedClassifier,
    /// Universe indices the classifier predicts positive.
    pub positives: IndexSet,
}

fn predicted_positives(u: &Universe, classifier: &TrainedClassifier) -> IndexSet {
    IndexSet::from_iter(
        (0..u.len()).filter(|&i| classifier.classify(&u.points()[i]) == Label::Plus),
    )
}

/// Single-party pipeline, full detail: sample, label via the oracle,
/// train, classify the whole universe.
pub fn run_sped_detailed(u: &Universe, config: &PipelineConfig) -> Result<SpedRun, PipelineError> {
    let sample = sample_training(u, config.seed, config.sample_size)?;
    let training = u.dataset().subset(&sample)?;
    let classifier = config.learner.train(&training, &config.solver)?;
    let positives = predicted_positives(u, &classifier);
    Ok(SpedRun {
        sample,
        classifier,
        positives,
    })
}

/// Single-party pipeline: universe indices predicted positive.
pub fn run_sped(u: &Universe, config: &PipelineConfig) -> Result<IndexSet, PipelineError> {
    Ok(run_sped_detailed(u, config)?.positives)
}

/// Multi-party pipeline, full detail.
///
/// The same seeded sample is pushed through the disclosure protocol (under
/// the separability backend matching the learner, so disclosure reasons in
/// the learner's feature space). The producing party reports according to
/// `alice`, where strategy indices refer to positions within the sorted
/// sample. The reviewing party trains on the disclosed points with their
/// vetted labels, and the trained classifier is checked against every
/// disclosed label before being applied to the universe; a contradiction
/// is a protocol failure surfaced as [`PipelineError::InconsistentClassifier`]
/// (with a universe index).
pub fn run_mped_detailed(
    u: &Universe,
    config: &PipelineConfig,
    alice: &AliceStrategy,
) -> Result<MpedRun, PipelineError> {
    let sample = sample_training(u, config.seed, config.sample_size)?;
    let training_pool = u.dataset().subset(&sample)?;
    let backend = config.learner.backend(&config.solver);
    let transcript = run_cpp_with(&training_pool, alice, &BobWins, backend.as_ref())?;

    let sample_order = sample.to_vec();
    let disclosed = IndexSet::from_iter(transcript.disclosed.iter().map(|j| sample_order[j]));
    let training = u.dataset().subset(&disclosed)?;
    let classifier = config.learner.train(&training, &config.solver)?;

    for i in disclosed.iter() {
        if classifier.classify(&u.points()[i]) != u.hidden_label(i) {
            return Err(PipelineError::InconsistentClassifier { index: i });
        }
    }

    let positives = predicted_positives(u, &classifier);
    Ok(MpedRun {
        sample,
        transcript,
        disclosed,
        classifier,
        positives,
    })
}

/// Multi-party pipeline: universe indices predicted positive.
pub fn run_mped(
    u: &Universe,
    config: &PipelineConfig,
    alice: &AliceStrategy,
) -> Result<IndexSet, PipelineError> {
    Ok(run_mped_detailed(u, config, alice)?.positives)
}

/// Side-by-side result of running both pipelines on the same seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    /// Whether the predicted positive sets coincide.
    pub equal: bool,
    pub sped_positives: IndexSet,
    pub mped_positives: IndexSet,
    /// Parameter distance between the two trained classifiers (largest
    /// decision-value gap over the universe when forms differ).
    pub classifier_distance: f64,
    /// How many points the protocol disclosed to the reviewing party.
    pub disclosed_count: usize,
}

impl EquivalenceReport {
    /// Serializes the report as pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Runs both pipelines on the shared seed and compares their outputs.
pub fn compare_pipelines(
    u: &Universe,
    config: &PipelineConfig,
    alice: &AliceStrategy,
) -> Result<EquivalenceReport, PipelineError> {
    let sped = run_sped_detailed(u, config)?;
    let mped = run_mped_detailed(u, config, alice)?;
    let classifier_distance = sped.classifier.distance(&mped.classifier, u.points());
    Ok(EquivalenceReport {
        equal: sped.positives == mped.positives,
        sped_positives: sped.positives,
        mped_positives: mped.positives,
        classifier_distance,
        disclosed_count: mped.disclosed.len(),
    })
}

/// Generates a random dataset that is strictly linearly separable with at
/// least the requested margin, deterministically from a seed.
///
/// Labels are drawn first (both classes forced to appear); each point is
/// drawn in a box and then shifted along the hidden unit normal until its
/// signed distance clears the margin plus a buffer, so the subsequent
/// rounding of every coordinate to three decimals cannot erode
/// separability. Coordinates are exact multiples of 1/1000, so the result
/// round-trips through the dataset JSON format unchanged.
pub fn generate_separable(
    seed: u64,
    n_points: usize,
    dim: usize,
    margin: f64,
) -> Result<LabeledDataset, PipelineError> {
    if dim == 0 {
        return Err(PipelineError::InvalidConfig {
            reason: "dimension must be at least 1".into(),
        });
    }
    if n_points < 2 {
        return Err(PipelineError::InvalidConfig {
            reason: "need at least 2 points to populate both classes".into(),
        });
    }
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(PipelineError::InvalidConfig {
            reason: "margin must be positive and finite".into(),
        });
    }

    let mut rng = SplitMix64::new(seed);
    'attempt: for _ in 0..64 {
        // Hidden separating hyperplane: unit normal and offset.
        let mut normal = vec![0.0f64; dim];
        for _ in 0..16 {
            for v in normal.iter_mut() {
                *v = 2.0 * rng.next_f64() - 1.0;
            }
            if normal.iter().map(|v| v * v).sum::<f64>().sqrt() > 1e-3 {
                break;
            }
        }
        let norm = normal.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in normal.iter_mut() {
            *v /= norm;
        }
        let offset = 2.0 * (2.0 * rng.next_f64() - 1.0);

        let mut labels: Vec<Label> = (0..n_points)
            .map(|_| if rng.next_bool() { Label::Plus } else { Label::Minus })
            .collect();
        if labels.iter().all(|&l| l == labels[0]) {
            let last = labels.len() - 1;
            labels[last] = labels[last].flip();
        }

        let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
        let mut points: Vec<Point> = Vec::with_capacity(n_points);
        for &label in &labels {
            let mut placed = false;
            for _ in 0..100 {
                let mut x: Vec<f64> = (0..dim).map(|_| 10.0 * rng.next_f64() - 5.0).collect();
                let dist: f64 =
                    normal.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - offset;
                // Shift along the normal to a signed distance strictly
                // beyond the margin; the 0.25 buffer dwarfs the 5e-4
                // perturbation that rounding can introduce.
                let target = label.as_f64() * (margin + 0.25 + rng.next_f64());
                for (xi, ni) in x.iter_mut().zip(&normal) {
                    *xi += ni * (target - dist);
                }
                let rounded: Vec<String> = x.iter().map(|v| format!("{v:.3}")).collect();
                if seen.insert(rounded.clone()) {
                    let refs: Vec<&str> = rounded.iter().map(String::as_str).collect();
                    points.push(Point::parse(&refs).expect("formatted decimals parse"));
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }

        let data = LabeledDataset::new(points, labels)?;
        let pos = data.select(&data.positives());
        let neg = data.select(&data.negatives());
        if check_separability(&pos, &neg)?.is_separable() {
            return Ok(data);
        }
    }
    Err(PipelineError::InvalidConfig {
        reason: "could not generate a separable dataset with the requested parameters".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_universe() -> Universe {
        // Two tight clusters; every subsample is separable.
        Universe::new(
            LabeledDataset::parse(
                &[
                    &["0", "0"],
                    &["1", "0"],
                    &["0", "1"],
                    &["1", "1"],
                    &["5", "5"],
                    &["6", "5"],
                    &["5", "6"],
                    &["6", "6"],
                ],
                &[-1, -1, -1, -1, 1, 1, 1, 1],
            )
            .unwrap(),
        )
    }

    #[test]
    fn sampling_is_deterministic_and_validates() {
        let u = toy_universe();
        let a = sample_training(&u, 3, 5).unwrap();
        let b = sample_training(&u, 3, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|i| i < u.len()));
        assert_eq!(sample_training(&u, 0, u.len()).unwrap(), IndexSet::full(8));
        assert!(matches!(
            sample_training(&u, 0, 9),
            Err(PipelineError::SampleTooLarge { .. })
        ));
        assert!(matches!(
            sample_training(&u, 0, 0),
            Err(PipelineError::InvalidConfig { .. })
        ));
    }

    #[test]
    fn different_seeds_give_different_samples() {
        let u = toy_universe();
        let a = sample_training(&u, 0, 4).unwrap();
        let b = sample_training(&u, 1, 4).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn full_sample_single_party_recovers_the_truth() {
        let u = toy_universe();
        let config = PipelineConfig::new(u.len(), 0, LearnerSpec::HardSvm);
        assert_eq!(run_sped(&u, &config).unwrap(), u.true_positives());
    }

    #[test]
    fn two_point_universe_classifies_the_positive() {
        let u = Universe::new(
            LabeledDataset::parse(&[&["0", "0"], &["3", "3"]], &[-1, 1]).unwrap(),
        );
        let config = PipelineConfig::new(2, 0, LearnerSpec::HardSvm);
        assert_eq!(run_sped(&u, &config).unwrap(), IndexSet::from_iter([1]));
    }

    #[test]
    fn pipelines_agree_for_the_margin_learner() {
        let u = toy_universe();
        for strategy in [
            AliceStrategy::Truthful,
            AliceStrategy::HidePositives(1),
            AliceStrategy::ExtraPositives(1),
        ] {
            for m in [4, 6, 8] {
                let config = PipelineConfig::new(m, 11, LearnerSpec::HardSvm);
                let report = compare_pipelines(&u, &config, &strategy).unwrap();
                assert!(report.equal, "strategy {strategy:?}, m={m}: {report:?}");
                assert!(report.classifier_distance <= 1e-6, "{report:?}");
            }
        }
    }

    #[test]
    fn multi_party_discloses_the_mandatory_set_under_truth() {
        let u = toy_universe();
        let config = PipelineConfig::new(u.len(), 0, LearnerSpec::HardSvm);
        let run = run_mped_detailed(&u, &config, &AliceStrategy::Truthful).unwrap();
        let mandatory = u
            .true_positives()
            .union(&crate::separability::critical_points(u.dataset(), &u.true_positives()).unwrap());
        assert_eq!(run.disclosed, mandatory);
        assert_eq!(run.positives, u.true_positives());
    }

    #[test]
    fn report_serializes_with_the_documented_keys() {
        let u = toy_universe();
        let config = PipelineConfig::new(4, 2, LearnerSpec::HardSvm);
        let report = compare_pipelines(&u, &config, &AliceStrategy::Truthful).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert!(v["equal"].is_boolean());
        assert!(v["sped_positives"].is_array());
        assert!(v["mped_positives"].is_array());
        assert!(v["classifier_distance"].is_number());
        assert!(v["disclosed_count"].is_number());
    }

    #[test]
    fn generated_datasets_are_separable_and_deterministic() {
        let a = generate_separable(7, 40, 2, 0.5).unwrap();
        let b = generate_separable(7, 40, 2, 0.5).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.len(), 40);
        assert_eq!(a.dim(), 2);
        assert!(!a.positives().is_empty());
        assert!(!a.negatives().is_empty());
        let pos = a.select(&a.positives());
        let neg = a.select(&a.negatives());
        assert!(check_separability(&pos, &neg).unwrap().is_separable());
    }

    #[test]
    fn generator_rejects_bad_parameters() {
        assert!(matches!(
            generate_separable(0, 1, 2, 0.5),
            Err(PipelineError::InvalidConfig { .. })
        ));
        assert!(matches!(
            generate_separable(0, 10, 0, 0.5),
            Err(PipelineError::InvalidConfig { .. })
        ));
        assert!(matches!(
            generate_separable(0, 10, 2, 0.0),
            Err(PipelineError::InvalidConfig { .. })
        ));
    }

    #[test]
    fn kernel_learner_pipelines_agree_on_a_separable_universe() {
        let u = toy_universe();
        let spec = KernelSpec::Poly {
            degree: 2,
            coef0: 1.0,
        };
        let config = PipelineConfig::new(6, 5, LearnerSpec::KernelSvm(spec));
        let report = compare_pipelines(&u, &config, &AliceStrategy::HidePositives(1)).unwrap();
        assert!(report.equal, "{report:?}");
    }
}
