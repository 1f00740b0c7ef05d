//! `t_∘`, layer decompositions, `t_•`, and maximal models.

use super::{GamesError, Strategy};
use crate::bits::Event;
use crate::logic::Formula;
use crate::model::SubjectiveModel;
use crate::rational::{format_q, Q};
use num_traits::Zero;
use serde::Serialize;

/// Maximal models have `2^c` states; `c` is capped here.
pub const MAX_COORDINATES: usize = 16;

pub(crate) fn require_sound(m: &SubjectiveModel) -> Result<(), GamesError> {
    let c = m.classify_truth_stored();
    if c.sound {
        Ok(())
    } else {
        Err(GamesError::NotSound(c.witnesses))
    }
}

fn truth(m: &SubjectiveModel, f: &Formula) -> Result<Event, GamesError> {
    m.truth_extended(f)
        .ok_or_else(|| GamesError::Undefined(f.to_string()))
}

/// `x(ω) = Σ_φ s(φ)·[ω ∈ t(φ)]`; `t` must be sound on its stored formulas.
pub fn t_circ(m: &SubjectiveModel, s: &Strategy) -> Result<Vec<Q>, GamesError> {
    require_sound(m)?;
    act(m, s)
}

fn act(m: &SubjectiveModel, s: &Strategy) -> Result<Vec<Q>, GamesError> {
    let mut x = vec![Q::zero(); m.state_count()];
    for (f, v) in s.payoffs() {
        for i in truth(m, f)?.iter() {
            x[i] += v;
        }
    }
    Ok(x)
}

/// One level of a layer-cake decomposition: `formula` has truth set
/// `event = {x ≥ alpha}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub alpha: Q,
    pub formula: Formula,
    pub event: Event,
}

impl Serialize for Layer {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Layer", 2)?;
        st.serialize_field("alpha", &format_q(&self.alpha))?;
        st.serialize_field("formula", &self.formula.to_string())?;
        st.end()
    }
}

/// Finds a formula whose truth set is `target`.
struct Preimages<'a> {
    m: &'a SubjectiveModel,
    minterm_events: Option<Vec<Option<Event>>>,
}

impl<'a> Preimages<'a> {
    fn new(m: &'a SubjectiveModel) -> Self {
        Preimages {
            m,
            minterm_events: None,
        }
    }

    fn find(&mut self, target: &Event) -> Option<Formula> {
        let m = self.m;
        if target.is_full() {
            return Some(Formula::True);
        }
        if let Some(e) = m
            .truth_entries()
            .iter()
            .find(|e| e.event == *target && e.formula != Formula::False)
        {
            return Some(e.formula.clone());
        }
        let names = m.atoms().names();
        let literal = |j: usize, positive: bool| {
            let a = Formula::atom(&names[j]);
            if positive {
                a
            } else {
                Formula::not(a)
            }
        };
        let hits = |f: &Formula| m.truth_extended(f).as_ref() == Some(target);
        for j in 0..names.len() {
            for positive in [true, false] {
                let f = literal(j, positive);
                if hits(&f) {
                    return Some(f);
                }
            }
        }
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                for (pi, pj) in [(true, true), (true, false), (false, true), (false, false)] {
                    let f = Formula::and(literal(i, pi), literal(j, pj));
                    if hits(&f) {
                        return Some(f);
                    }
                }
            }
        }
        // Under a sound t every truth set is a union of minterm images.
        let atoms = m.atoms();
        let events = self.minterm_events.get_or_insert_with(|| {
            (0..atoms.valuation_count())
                .map(|v| m.truth_extended(&atoms.minterm(v)))
                .collect()
        });
        let mut chosen = atoms.none();
        let mut covered = Event::empty(target.len());
        for (v, e) in events.iter().enumerate() {
            let e = e.as_ref()?;
            if e.is_subset(target) {
                chosen.insert(v);
                covered = covered.union(e);
            }
        }
        (covered == *target).then(|| atoms.formula_for(&chosen))
    }
}

/// Distinct positive levels of `x` in decreasing order, each with a formula
/// whose truth set is the corresponding upper set.
pub fn layer_decompose(x: &[Q], m: &SubjectiveModel) -> Result<Vec<Layer>, GamesError> {
    if x.len() != m.state_count() {
        return Err(GamesError::Shape);
    }
    let mut levels: Vec<&Q> = x.iter().filter(|v| !v.is_zero()).collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let mut pre = Preimages::new(m);
    let mut out = Vec::with_capacity(levels.len());
    for alpha in levels {
        let event = Event::from_indices(x.len(), (0..x.len()).filter(|&i| x[i] >= *alpha));
        let formula = pre
            .find(&event)
            .ok_or_else(|| GamesError::NoPreimage(m.event_label(&event)))?;
        out.push(Layer {
            alpha: alpha.clone(),
            formula,
            event,
        });
    }
    Ok(out)
}

/// `Σ_k (α_k − α_{k+1})·1_{E_k}` over the layers' levels.
pub(crate) fn recompose(
    n: usize,
    layers: &[Layer],
    mut event: impl FnMut(&Layer) -> Result<Event, GamesError>,
) -> Result<Vec<Q>, GamesError> {
    let mut y = vec![Q::zero(); n];
    for (k, layer) in layers.iter().enumerate() {
        let next = layers.get(k + 1).map_or_else(Q::zero, |l| l.alpha.clone());
        let step = &layer.alpha - next;
        for i in event(layer)?.iter() {
            y[i] += &step;
        }
    }
    Ok(y)
}

fn require_exact_additive(target: &SubjectiveModel) -> Result<(), GamesError> {
    let exact = target.classify_truth_stored().exact;
    let additive = target.classify_lambda()?.additive;
    if exact && additive {
        Ok(())
    } else {
        Err(GamesError::TargetShape)
    }
}

fn check_agree(
    source: &SubjectiveModel,
    target: &SubjectiveModel,
    f: &Formula,
    source_event: &Event,
    target_event: &Event,
) -> Result<(), GamesError> {
    if let (Some(a), Some(b)) = (source.lambda(source_event), target.lambda(target_event)) {
        if a != b {
            return Err(GamesError::Mismatch {
                formula: f.to_string(),
                source_value: format_q(&a),
                target_value: format_q(&b),
            });
        }
    }
    Ok(())
}

/// Carries `s` to an exact additive `target` through the layers of
/// `t_∘(s)` in the sound `source`. Each layer formula is read in the target
/// directly, or through a target formula with the same source truth set.
/// The models must agree on `λ(t(φ))` wherever both are defined.
pub fn t_bullet(
    source: &SubjectiveModel,
    target: &SubjectiveModel,
    s: &Strategy,
) -> Result<Vec<Q>, GamesError> {
    require_sound(source)?;
    require_exact_additive(target)?;
    for entry in source.truth_entries().iter().chain(target.truth_entries()) {
        if let (Some(se), Some(te)) = (
            source.truth_extended(&entry.formula),
            target.truth_semantic(&entry.formula),
        ) {
            check_agree(source, target, &entry.formula, &se, te)?;
        }
    }
    let layers = layer_decompose(&act(source, s)?, source)?;
    recompose(target.state_count(), &layers, |layer| {
        let te = match target.truth_semantic(&layer.formula) {
            Some(e) => e.clone(),
            None => target
                .truth_entries()
                .iter()
                .find(|e| source.truth_extended(&e.formula).as_ref() == Some(&layer.event))
                .map(|e| e.event.clone())
                .ok_or_else(|| {
                    GamesError::Undefined(format!("{} in the target model", layer.formula))
                })?,
        };
        check_agree(source, target, &layer.formula, &layer.event, &te)?;
        Ok(te)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralEquality {
    pub equal: bool,
    #[serde(with = "crate::rational::serde_q")]
    pub source_value: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub target_value: Q,
}

/// `∫ t_∘(s) dλ` against `∫ t′_•(s) dλ′`, both computed exactly.
pub fn verify_integral_equality(
    source: &SubjectiveModel,
    target: &SubjectiveModel,
    s: &Strategy,
) -> Result<IntegralEquality, GamesError> {
    let source_value = source.choquet(&t_circ(source, s)?)?;
    let target_value = target.choquet(&t_bullet(source, target, s)?)?;
    Ok(IntegralEquality {
        equal: source_value == target_value,
        source_value,
        target_value,
    })
}

/// One binary coordinate per base event; state `k` sets coordinate `i` to
/// bit `i` of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalModel {
    base_states: usize,
    coordinates: Vec<Event>,
}

impl MaximalModel {
    /// Coordinates are the distinct events other than `∅` and `Ω`, in order.
    pub fn new(base: &SubjectiveModel, events: &[Event]) -> Result<Self, GamesError> {
        let n = base.state_count();
        let mut coordinates: Vec<Event> = Vec::new();
        for e in events {
            if e.len() != n {
                return Err(GamesError::Shape);
            }
            if !e.is_empty() && !e.is_full() && !coordinates.contains(e) {
                coordinates.push(e.clone());
            }
        }
        if coordinates.len() > MAX_COORDINATES {
            return Err(GamesError::TooManyCoordinates {
                count: coordinates.len(),
                max: MAX_COORDINATES,
            });
        }
        Ok(MaximalModel {
            base_states: n,
            coordinates,
        })
    }

    /// Coordinates are the layer events of every strategy's `t_∘` act.
    pub fn for_strategies(base: &SubjectiveModel, strategies: &[Strategy]) -> Result<Self, GamesError> {
        require_sound(base)?;
        let mut events = Vec::new();
        for s in strategies {
            let layers = layer_decompose(&act(base, s)?, base)?;
            events.extend(layers.into_iter().map(|l| l.event));
        }
        MaximalModel::new(base, &events)
    }

    pub fn coordinates(&self) -> &[Event] {
        &self.coordinates
    }

    pub fn state_count(&self) -> usize {
        1 << self.coordinates.len()
    }

    /// Coordinate values in coordinate order, e.g. `10`.
    pub fn state_label(&self, k: usize) -> String {
        (0..self.coordinates.len())
            .map(|i| if k & (1 << i) != 0 { '1' } else { '0' })
            .collect()
    }

    /// `t^m` on a base event: the cylinder where its coordinate is 1, all
    /// states for `Ω`, none for `∅`.
    pub fn t_m(&self, e: &Event) -> Option<Event> {
        let size = self.state_count();
        if e.is_full() {
            return Some(Event::full(size));
        }
        if e.is_empty() {
            return Some(Event::empty(size));
        }
        let i = self.coordinates.iter().position(|c| c == e)?;
        Some(Event::from_indices(size, (0..size).filter(|k| k & (1 << i) != 0)))
    }

    /// `t^m_•(s)` built from the layers of `t_∘(s)` in `base`.
    pub fn t_m_bullet(&self, base: &SubjectiveModel, s: &Strategy) -> Result<Vec<Q>, GamesError> {
        if base.state_count() != self.base_states {
            return Err(GamesError::Shape);
        }
        let layers = layer_decompose(&t_circ(base, s)?, base)?;
        recompose(self.state_count(), &layers, |layer| {
            self.t_m(&layer.event).ok_or_else(|| {
                GamesError::Undefined(format!(
                    "{} as a maximal-model coordinate",
                    base.event_label(&layer.event)
                ))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{layer_source, layer_strategy, layer_target, pq};
    use super::*;
    use crate::logic::Atoms;
    use crate::model::tests::table;
    use crate::rational::{q, qi};

    #[test]
    fn fixture_t_circ_and_layers() {
        let m = layer_source();
        let x = t_circ(&m, &layer_strategy()).unwrap();
        assert_eq!(x, vec![qi(3), qi(4), qi(2)]);
        let layers = layer_decompose(&x, &m).unwrap();
        let got: Vec<(Q, String)> = layers
            .iter()
            .map(|l| (l.alpha.clone(), l.formula.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![
                (qi(4), "(p & !q)".to_string()),
                (qi(3), "p".to_string()),
                (qi(2), "T".to_string())
            ]
        );
        let back = recompose(3, &layers, |l| Ok(l.event.clone())).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn fixture_t_bullet_and_integrals() {
        let (src, tgt, s) = (layer_source(), layer_target(), layer_strategy());
        assert_eq!(t_bullet(&src, &tgt, &s).unwrap(), vec![qi(3), qi(2), qi(2)]);
        let eq = verify_integral_equality(&src, &tgt, &s).unwrap();
        assert!(eq.equal);
        assert_eq!(eq.source_value, q(7, 3));
    }

    #[test]
    fn bets_and_constants() {
        let m = layer_source();
        let p = m.atoms().parse("p").unwrap();
        let x = t_circ(&m, &Strategy::bet(p.clone())).unwrap();
        assert_eq!(x, vec![qi(1), qi(1), qi(0)]);
        let layers = layer_decompose(&x, &m).unwrap();
        assert_eq!(layers.len(), 1);
        assert_eq!(layers[0].formula, p);
        let c = vec![q(1, 2); 3];
        let layers = layer_decompose(&c, &m).unwrap();
        assert_eq!(layers[0].formula, Formula::True);
        assert!(layer_decompose(&vec![qi(0); 3], &m).unwrap().is_empty());
        let tgt = layer_target();
        assert_eq!(
            t_bullet(&m, &tgt, &Strategy::bet(p)).unwrap(),
            vec![qi(1), qi(0), qi(0)]
        );
    }

    #[test]
    fn unsound_source_is_refused() {
        let s = ["w1", "w2"];
        let m = SubjectiveModel::from_labels(
            &pq(),
            &s,
            &[("p", &["w1"]), ("p & q", &["w2"])],
            table(&s, &[(&["w1"], q(1, 2)), (&["w2"], q(1, 2))]),
        )
        .unwrap();
        assert!(matches!(
            t_circ(&m, &layer_strategy()),
            Err(GamesError::NotSound(_))
        ));
    }

    #[test]
    fn swapped_atom_images_do_not_match_target() {
        // t(p) = {w1}, t(q) = {w1,w2} with the same capacity.
        let src = layer_source();
        let s = ["w1", "w2", "w3"];
        let mut values = Vec::new();
        for mask in 1u64..7 {
            let e = Event::from_mask(3, mask);
            values.push((e.clone(), src.lambda(&e).unwrap()));
        }
        let labels: Vec<Vec<&str>> = values
            .iter()
            .map(|(e, _)| e.iter().map(|i| s[i]).collect())
            .collect();
        let rows: Vec<(&[&str], Q)> = labels
            .iter()
            .zip(&values)
            .map(|(l, (_, v))| (l.as_slice(), v.clone()))
            .collect();
        let alt = SubjectiveModel::from_labels(
            &pq(),
            &s,
            &[("p", &["w1"]), ("q", &["w1", "w2"])],
            table(&s, &rows),
        )
        .unwrap();
        let x = t_circ(&alt, &layer_strategy()).unwrap();
        assert_eq!(x, vec![qi(3), qi(1), qi(2)]);
        assert!(t_bullet(&alt, &layer_target(), &layer_strategy()).is_err());
    }

    #[test]
    fn maximal_model_of_two_state_example() {
        let atoms = Atoms::new(&["p"]).unwrap();
        let s = ["w1", "w2"];
        let base = SubjectiveModel::from_labels(
            &atoms,
            &s,
            &[("p", &["w1"])],
            table(&s, &[(&["w1"], q(1, 4)), (&["w2"], q(1, 4))]),
        )
        .unwrap();
        let strategies = [
            Strategy::from_texts(&atoms, &[("p", qi(1))]).unwrap(),
            Strategy::from_texts(&atoms, &[("!p", qi(1))]).unwrap(),
            Strategy::from_texts(&atoms, &[("T", q(1, 3))]).unwrap(),
        ];
        let mm = MaximalModel::for_strategies(&base, &strategies).unwrap();
        assert_eq!(mm.state_count(), 4);
        assert_eq!(mm.coordinates()[0], Event::from_indices(2, [0]));
        assert_eq!(mm.t_m_bullet(&base, &strategies[2]).unwrap(), vec![q(1, 3); 4]);
        assert_eq!(
            mm.t_m_bullet(&base, &strategies[0]).unwrap(),
            vec![qi(0), qi(1), qi(0), qi(1)]
        );
        assert_eq!(mm.state_label(1), "10");
        let single = MaximalModel::new(&base, &[Event::from_indices(2, [0])]).unwrap();
        assert_eq!(single.state_count(), 2);
    }
}
