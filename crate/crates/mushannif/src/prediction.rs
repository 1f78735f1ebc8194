//! The common classification result type.

use std::collections::BTreeMap;

/// Outcome of classifying one document: the winning label, the score of
/// every candidate class, and the margin between the two best scores.
///
/// Higher scores always mean a better match; classifiers whose natural
/// quantity is a distance negate it before building a prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: String,
    pub scores: BTreeMap<String, f64>,
    pub margin: f64,
}

impl Prediction {
    /// Picks the winner from a score table. Ties on the maximum score go to
    /// the lexicographically smallest label. The margin is the gap between
    /// the best and second-best scores, or zero when only one class exists.
    ///
    /// Returns `None` on an empty table.
    pub fn from_scores(scores: BTreeMap<String, f64>) -> Option<Self> {
        let mut best: Option<(&String, f64)> = None;
        let mut second: Option<f64> = None;
        for (label, &score) in &scores {
            match best {
                // strictly-greater keeps the earliest (smallest) label on ties
                Some((_, b)) if score > b => {
                    second = Some(b);
                    best = Some((label, score));
                }
                Some(_) => {
                    if second.map_or(true, |s| score > s) {
                        second = Some(score);
                    }
                }
                None => best = Some((label, score)),
            }
        }
        let (label, best_score) = best?;
        let margin = second.map_or(0.0, |s| best_score - s);
        Some(Self {
            label: label.clone(),
            scores: scores.clone(),
            margin,
        })
    }

    /// Scores sorted best first, ties by label.
    pub fn ranked(&self) -> Vec<(&str, f64)> {
        let mut rows: Vec<(&str, f64)> = self
            .scores
            .iter()
            .map(|(l, &s)| (l.as_str(), s))
            .collect();
        rows.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(b.0)));
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_highest_score() {
        let scores = BTreeMap::from([
            ("a".to_string(), -2.0),
            ("b".to_string(), -1.0),
            ("c".to_string(), -3.0),
        ]);
        let p = Prediction::from_scores(scores).unwrap();
        assert_eq!(p.label, "b");
        assert!((p.margin - 1.0).abs() < 1e-12);
    }

    #[test]
    fn breaks_ties_lexicographically() {
        let scores = BTreeMap::from([
            ("zebra".to_string(), 5.0),
            ("apple".to_string(), 5.0),
        ]);
        let p = Prediction::from_scores(scores).unwrap();
        assert_eq!(p.label, "apple");
        assert_eq!(p.margin, 0.0);
    }

    #[test]
    fn single_class_margin_is_zero() {
        let scores = BTreeMap::from([("only".to_string(), 3.5)]);
        let p = Prediction::from_scores(scores).unwrap();
        assert_eq!(p.label, "only");
        assert_eq!(p.margin, 0.0);
    }

    #[test]
    fn empty_table_is_none() {
        assert!(Prediction::from_scores(BTreeMap::new()).is_none());
    }

    #[test]
    fn ranked_orders_best_first() {
        let scores = BTreeMap::from([
            ("a".to_string(), 1.0),
            ("b".to_string(), 3.0),
            ("c".to_string(), 3.0),
        ]);
        let p = Prediction::from_scores(scores).unwrap();
        let ranked = p.ranked();
        assert_eq!(ranked[0].0, "b");
        assert_eq!(ranked[1].0, "c");
        assert_eq!(ranked[2].0, "a");
    }
}
