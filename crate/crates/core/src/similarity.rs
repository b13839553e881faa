//! Edge-based and IC-based similarity measures over pluggable path and IC
//! models, plus word-level scoring by best sense pair.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ic::{ic_pretreat, mics, IcModel, IcTable};
use crate::path::{measure_path, PathModel};
use crate::taxonomy::{ConceptId, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Rada,
    Leacock,
    Wu,
    Liu1,
    Liu2,
    Li,
    Hao,
    Resnik,
    Lin,
    Jiang,
}

/// Whether larger scores mean more or less similar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Similarity,
    Distance,
}

impl Measure {
    pub const ALL: [Measure; 10] = [
        Measure::Rada,
        Measure::Leacock,
        Measure::Wu,
        Measure::Liu1,
        Measure::Liu2,
        Measure::Li,
        Measure::Hao,
        Measure::Resnik,
        Measure::Lin,
        Measure::Jiang,
    ];

    /// The six path-based measures the density model is evaluated on.
    pub const EDGE_BASED: [Measure; 6] = [
        Measure::Rada,
        Measure::Leacock,
        Measure::Wu,
        Measure::Liu1,
        Measure::Liu2,
        Measure::Li,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Rada => "rada",
            Measure::Leacock => "leacock",
            Measure::Wu => "wu",
            Measure::Liu1 => "liu1",
            Measure::Liu2 => "liu2",
            Measure::Li => "li",
            Measure::Hao => "hao",
            Measure::Resnik => "resnik",
            Measure::Lin => "lin",
            Measure::Jiang => "jiang",
        }
    }

    pub fn uses_ic(self) -> bool {
        matches!(self, Measure::Resnik | Measure::Lin | Measure::Jiang)
    }

    pub fn orientation(self) -> Orientation {
        match self {
            Measure::Jiang => Orientation::Distance,
            _ => Orientation::Similarity,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .or(match lower.as_str() {
                "liu-1" | "liu_1" => Some(Measure::Liu1),
                "liu-2" | "liu_2" => Some(Measure::Liu2),
                "wup" | "wu-palmer" => Some(Measure::Wu),
                "lch" => Some(Measure::Leacock),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidParameter(format!("unknown measure {s:?}")))
    }
}

/// Tunable constants. `None` means "derive from the taxonomy".
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureParams {
    pub alpha: f64,
    pub beta: f64,
    /// Rada's MAX; defaults to twice the taxonomy depth.
    pub max: Option<f64>,
    /// Leacock's D; defaults to the taxonomy depth.
    pub depth: Option<f64>,
}

impl MeasureParams {
    pub fn defaults_for(measure: Measure) -> Self {
        let (alpha, beta) = match measure {
            Measure::Liu1 => (0.5, 0.55),
            Measure::Liu2 => (0.25, 0.25),
            Measure::Li => (0.2, 0.6),
            Measure::Hao => (0.0, 1.0),
            _ => (0.0, 0.0),
        };
        MeasureParams {
            alpha,
            beta,
            max: None,
            depth: None,
        }
    }

    /// Apply a `key=value` override (`alpha`, `beta`, `max`, `depth`/`d`).
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match key.to_ascii_lowercase().as_str() {
            "alpha" | "a" => self.alpha = value,
            "beta" | "b" => self.beta = value,
            "max" => self.max = Some(value),
            "depth" | "d" => self.depth = Some(value),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown parameter {other:?}"
                )))
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpec {
    pub measure: Measure,
    pub params: MeasureParams,
    pub path_model: PathModel,
    pub ic_model: Option<IcModel>,
}

impl MeasureSpec {
    /// Default parameters, edge counting, and Seco IC for IC measures.
    pub fn new(measure: Measure) -> Self {
        MeasureSpec {
            measure,
            params: MeasureParams::defaults_for(measure),
            path_model: PathModel::EdgeCounting,
            ic_model: measure.uses_ic().then_some(IcModel::Seco),
        }
    }

    pub fn with_path_model(mut self, model: PathModel) -> Self {
        self.path_model = model;
        self
    }

    pub fn with_ic_model(mut self, model: IcModel) -> Self {
        self.ic_model = Some(model);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        match self.measure {
            Measure::Liu1 | Measure::Liu2 | Measure::Li => {
                for (name, v) in [("alpha", p.alpha), ("beta", p.beta)] {
                    if !(v > 0.0 && v < 1.0) {
                        return Err(Error::InvalidParameter(format!(
                            "{} needs 0 < {name} < 1, got {v}",
                            self.measure
                        )));
                    }
                }
            }
            Measure::Hao if p.alpha < 0.0 || p.beta < 0.0 => {
                return Err(Error::InvalidParameter(
                    "hao smoothing factors must be nonnegative".into(),
                ));
            }
            _ => {}
        }
        if let Some(d) = p.depth {
            if d <= 0.0 {
                return Err(Error::InvalidParameter("depth must be positive".into()));
            }
        }
        if self.measure.uses_ic() && self.ic_model.is_none() {
            return Err(Error::Misconfigured(format!(
                "{} needs an IC model",
                self.measure
            )));
        }
        Ok(())
    }

    /// Short label such as `wu/density(λ=0.3)` or `lin/seco`.
    pub fn summary(&self) -> String {
        match (&self.ic_model, self.measure.uses_ic()) {
            (Some(ic), true) => format!("{}/{}", self.measure, ic),
            _ => format!("{}/{}", self.measure, self.path_model),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreDetail {
    /// Path length under the configured model.
    pub path: f64,
    pub edge_part: f64,
    pub compensation_part: f64,
    /// Edge-counted depth of the least common subsumer (or the MICS for IC
    /// measures).
    pub lcs_depth: u32,
    pub ic_c1: Option<f64>,
    pub ic_c2: Option<f64>,
    pub ic_lcs: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarityScore {
    pub value: f64,
    pub orientation: Orientation,
    /// Set when a word had no senses and `value` is the measure's floor.
    pub unknown_word: bool,
    /// Senses that produced the score, when word-level.
    pub senses: Option<(ConceptId, ConceptId)>,
    pub detail: Option<ScoreDetail>,
}

impl SimilarityScore {
    /// True when `self` is a better match than `other`.
    fn beats(&self, other: &SimilarityScore) -> bool {
        match self.orientation {
            Orientation::Similarity => self.value > other.value,
            Orientation::Distance => self.value < other.value,
        }
    }
}

/// Closed-form scores from path length `p` and LCS depth `d`.
pub fn edge_formula(
    measure: Measure,
    params: &MeasureParams,
    p: f64,
    d: f64,
    identical: bool,
) -> f64 {
    let MeasureParams { alpha, beta, .. } = *params;
    match measure {
        Measure::Rada => 2.0 * params.max.expect("rada MAX resolved") - p,
        Measure::Leacock => {
            // The log diverges at zero length; identity counts as one edge.
            let length = if identical {
                1.0
            } else {
                p.max(f64::MIN_POSITIVE)
            };
            -(length / (2.0 * params.depth.expect("leacock D resolved"))).ln()
        }
        Measure::Wu => ratio_or_one(2.0 * d, 2.0 * d + p),
        Measure::Liu1 => ratio_or_one(alpha * d, alpha * d + beta * p),
        Measure::Liu2 => {
            let num = (alpha * d).exp() - 1.0;
            ratio_or_one(num, num + (beta * p).exp() - 1.0)
        }
        Measure::Li => (-alpha * p).exp() * (beta * d).tanh(),
        Measure::Hao => {
            let left = 1.0 - p / (p + d + beta);
            let denom = p + d / 2.0 + alpha;
            // d = 0 shares no depth, whatever the path.
            if denom == 0.0 {
                0.0
            } else {
                left * (d / denom)
            }
        }
        Measure::Resnik | Measure::Lin | Measure::Jiang => {
            unreachable!("IC measures have no path formula")
        }
    }
}

/// `num / den`, with the degenerate 0/0 (both concepts are the root) as 1.
fn ratio_or_one(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        1.0
    } else {
        num / den
    }
}

/// A measure bound to a taxonomy, with its IC table when the measure needs one.
#[derive(Debug, Clone)]
pub struct Scorer<'t> {
    taxonomy: &'t Taxonomy,
    spec: MeasureSpec,
    ic: Option<IcTable>,
}

impl<'t> Scorer<'t> {
    /// Validate `spec` and, for IC measures, run the pretreatment pass.
    pub fn new(taxonomy: &'t Taxonomy, spec: MeasureSpec) -> Result<Self> {
        spec.validate()?;
        let ic = match (&spec.ic_model, spec.measure.uses_ic()) {
            (Some(model), true) => Some(ic_pretreat(taxonomy, model)?),
            _ => None,
        };
        Ok(Self::assemble(taxonomy, spec, ic))
    }

    /// Reuse an IC table built earlier for the same taxonomy.
    pub fn with_ic_table(
        taxonomy: &'t Taxonomy,
        spec: MeasureSpec,
        table: IcTable,
    ) -> Result<Self> {
        spec.validate()?;
        if table.len() != taxonomy.node_count() {
            return Err(Error::Misconfigured(
                "IC table was built for another taxonomy".into(),
            ));
        }
        Ok(Self::assemble(taxonomy, spec, Some(table)))
    }

    fn assemble(taxonomy: &'t Taxonomy, mut spec: MeasureSpec, ic: Option<IcTable>) -> Self {
        let depth = f64::from(taxonomy.max_depth().max(1));
        spec.params.max.get_or_insert(2.0 * depth);
        spec.params.depth.get_or_insert(depth);
        Scorer { taxonomy, spec, ic }
    }

    pub fn spec(&self) -> &MeasureSpec {
        &self.spec
    }

    pub fn taxonomy(&self) -> &'t Taxonomy {
        self.taxonomy
    }

    pub fn ic_table(&self) -> Option<&IcTable> {
        self.ic.as_ref()
    }

    pub fn orientation(&self) -> Orientation {
        self.spec.measure.orientation()
    }

    pub fn sim_concepts(&self, c1: ConceptId, c2: ConceptId) -> Result<SimilarityScore> {
        let t = self.taxonomy;
        let spec = &self.spec;
        let orientation = spec.measure.orientation();

        if let Some(ic) = &self.ic {
            let s = mics(t, ic, c1, c2)?;
            let (ic1, ic2, ics) = (ic.value(c1), ic.value(c2), ic.value(s));
            let value = match spec.measure {
                Measure::Resnik => ics,
                Measure::Lin => ratio_or_one(2.0 * ics, ic1 + ic2),
                Measure::Jiang => (ic1 + ic2 - 2.0 * ics).max(0.0),
                _ => unreachable!("IC table only built for IC measures"),
            };
            return Ok(SimilarityScore {
                value,
                orientation,
                unknown_word: false,
                senses: None,
                detail: Some(ScoreDetail {
                    path: f64::NAN,
                    edge_part: f64::NAN,
                    compensation_part: f64::NAN,
                    lcs_depth: t.depth_of(s),
                    ic_c1: Some(ic1),
                    ic_c2: Some(ic2),
                    ic_lcs: Some(ics),
                }),
            });
        }

        let (path, conn) = measure_path(t, c1, c2, spec.path_model)?;
        let d = t.depth_of(conn.lcs);
        let value = edge_formula(
            spec.measure,
            &spec.params,
            path.length,
            f64::from(d),
            c1 == c2,
        );
        Ok(SimilarityScore {
            value,
            orientation,
            unknown_word: false,
            senses: None,
            detail: Some(ScoreDetail {
                path: path.length,
                edge_part: path.edge_part,
                compensation_part: path.compensation_part,
                lcs_depth: d,
                ic_c1: None,
                ic_c2: None,
                ic_lcs: None,
            }),
        })
    }

    /// Score given to pairs with an unknown word.
    pub fn floor(&self) -> f64 {
        let params = &self.spec.params;
        match self.spec.measure {
            // 2·MAX − P at the longest nominal path P = MAX.
            Measure::Rada => params.max.unwrap_or(0.0),
            Measure::Jiang => self.jiang_max(),
            _ => 0.0,
        }
    }

    fn jiang_max(&self) -> f64 {
        2.0 * self.ic.as_ref().map_or(0.0, IcTable::max_value)
    }

    /// `1 − dist / dist_max` for Jiang; other measures pass through.
    pub fn normalized(&self, score: &SimilarityScore) -> f64 {
        match self.spec.measure {
            Measure::Jiang => {
                let max = self.jiang_max();
                if max > 0.0 {
                    1.0 - score.value / max
                } else {
                    1.0
                }
            }
            _ => score.value,
        }
    }

    /// Best score over every sense pair of the two words.
    pub fn sim_words(&self, w1: &str, w2: &str) -> Result<SimilarityScore> {
        let senses1 = self.taxonomy.concepts_for_word(w1);
        let senses2 = self.taxonomy.concepts_for_word(w2);
        if senses1.is_empty() || senses2.is_empty() {
            return Ok(SimilarityScore {
                value: self.floor(),
                orientation: self.orientation(),
                unknown_word: true,
                senses: None,
                detail: None,
            });
        }
        let mut best: Option<SimilarityScore> = None;
        for &c1 in senses1 {
            for &c2 in senses2 {
                let mut score = self.sim_concepts(c1, c2)?;
                score.senses = Some((c1, c2));
                if best.as_ref().is_none_or(|b| score.beats(b)) {
                    best = Some(score);
                }
            }
        }
        Ok(best.expect("both sense lists are non-empty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::load_edge_list;

    fn toy() -> Taxonomy {
        load_edge_list("a\troot\nb\troot\nc\ta\nd\ta\ne\tc\nf\tc\ng\tb\nsame\tc\n".as_bytes())
            .unwrap()
    }

    #[test]
    fn parse_measure_names() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert_eq!("Liu-1".parse::<Measure>().unwrap(), Measure::Liu1);
        assert!("hirst".parse::<Measure>().is_err());
    }

    #[test]
    fn defaults() {
        let p = MeasureParams::defaults_for(Measure::Liu1);
        assert_eq!((p.alpha, p.beta), (0.5, 0.55));
        let p = MeasureParams::defaults_for(Measure::Liu2);
        assert_eq!((p.alpha, p.beta), (0.25, 0.25));
        let p = MeasureParams::defaults_for(Measure::Hao);
        assert_eq!((p.alpha, p.beta), (0.0, 1.0));
        let t = toy();
        let s = Scorer::new(&t, MeasureSpec::new(Measure::Rada)).unwrap();
        assert_eq!(s.spec().params.max, Some(2.0 * t.max_depth() as f64));
        let s = Scorer::new(&t, MeasureSpec::new(Measure::Leacock)).unwrap();
        assert_eq!(s.spec().params.depth, Some(t.max_depth() as f64));
    }

    #[test]
    fn closed_forms() {
        let p = MeasureParams::defaults_for(Measure::Wu);
        assert!((edge_formula(Measure::Wu, &p, 1.0, 4.0, false) - 8.0 / 9.0).abs() < 1e-12);
        assert_eq!(edge_formula(Measure::Wu, &p, 3.0, 0.0, false), 0.0);
        assert_eq!(edge_formula(Measure::Wu, &p, 0.0, 0.0, true), 1.0);

        let p = MeasureParams::defaults_for(Measure::Liu1);
        let v = edge_formula(Measure::Liu1, &p, 2.0, 3.0, false);
        assert!((v - 1.5 / (1.5 + 1.1)).abs() < 1e-12);

        let p = MeasureParams::defaults_for(Measure::Liu2);
        let v = edge_formula(Measure::Liu2, &p, 2.0, 4.0, false);
        let e1 = 1.0f64.exp() - 1.0;
        assert!((v - e1 / (e1 + 0.5f64.exp() - 1.0)).abs() < 1e-12);

        let p = MeasureParams::defaults_for(Measure::Li);
        let v = edge_formula(Measure::Li, &p, 2.0, 3.0, false);
        assert!((v - (-0.4f64).exp() * 1.8f64.tanh()).abs() < 1e-12);

        let p = MeasureParams::defaults_for(Measure::Hao);
        let v = edge_formula(Measure::Hao, &p, 2.0, 4.0, false);
        assert!((v - (1.0 - 2.0 / 7.0) * (4.0 / 4.0)).abs() < 1e-12);

        let mut p = MeasureParams::defaults_for(Measure::Rada);
        p.max = Some(38.0);
        assert_eq!(edge_formula(Measure::Rada, &p, 0.0, 5.0, true), 76.0);

        let mut p = MeasureParams::defaults_for(Measure::Leacock);
        p.depth = Some(19.0);
        let v = edge_formula(Measure::Leacock, &p, 0.0, 5.0, true);
        assert!((v - 38.0f64.ln()).abs() < 1e-12);
        assert_eq!(v, edge_formula(Measure::Leacock, &p, 1.0, 5.0, false));
    }

    #[test]
    fn identity_scores() {
        let t = toy();
        let e = t.lookup("e").unwrap();
        for m in [Measure::Wu, Measure::Liu1, Measure::Liu2, Measure::Lin] {
            let s = Scorer::new(&t, MeasureSpec::new(m)).unwrap();
            assert_eq!(s.sim_concepts(e, e).unwrap().value, 1.0, "{m}");
        }
        let s = Scorer::new(&t, MeasureSpec::new(Measure::Jiang)).unwrap();
        assert_eq!(s.sim_concepts(e, e).unwrap().value, 0.0);
        let s = Scorer::new(&t, MeasureSpec::new(Measure::Rada)).unwrap();
        assert_eq!(
            s.sim_concepts(e, e).unwrap().value,
            4.0 * t.max_depth() as f64
        );
    }

    #[test]
    fn misconfigured_specs() {
        let t = toy();
        let mut spec = MeasureSpec::new(Measure::Lin);
        spec.ic_model = None;
        assert!(matches!(
            Scorer::new(&t, spec),
            Err(Error::Misconfigured(_))
        ));

        let mut spec = MeasureSpec::new(Measure::Liu1);
        spec.params.alpha = 1.5;
        assert!(matches!(
            Scorer::new(&t, spec),
            Err(Error::InvalidParameter(_))
        ));

        let mut p = MeasureParams::defaults_for(Measure::Li);
        assert!(p.set("gamma", 1.0).is_err());
        p.set("alpha", 0.3).unwrap();
        assert_eq!(p.alpha, 0.3);
    }

    #[test]
    fn word_scores_take_best_sense() {
        let t = toy();
        let s = Scorer::new(&t, MeasureSpec::new(Measure::Wu)).unwrap();
        assert_eq!(s.sim_words("e", "e").unwrap().value, 1.0);
        let w = s.sim_words("e", "f").unwrap();
        assert!(
            (w.value - edge_formula(Measure::Wu, &s.spec().params, 2.0, 2.0, false)).abs() < 1e-12
        );
        assert_eq!(s.sim_words("e", "g").unwrap().value, 0.0);

        let unknown = s.sim_words("zzzq", "e").unwrap();
        assert!(unknown.unknown_word);
        assert_eq!(unknown.value, 0.0);

        let j = Scorer::new(&t, MeasureSpec::new(Measure::Jiang)).unwrap();
        let unknown = j.sim_words("zzzq", "e").unwrap();
        assert_eq!(unknown.value, 2.0);
        assert_eq!(j.normalized(&unknown), 0.0);
    }
}
