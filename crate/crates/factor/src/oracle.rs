use std::collections::{HashMap, HashSet};

use crate::word::Word;

/// All group elements within `radius` of the identity, with their lengths.
#[derive(Debug)]
pub(crate) struct Ball {
    radius: u32,
    dist: HashMap<Word, u32>,
}

impl Ball {
    pub(crate) fn new(steps: &[Word], radius: u32) -> Self {
        let mut dist = HashMap::new();
        dist.insert(Word::identity(), 0);
        let mut frontier = vec![Word::identity()];
        for r in 1..=radius {
            let mut next = Vec::new();
            for u in &frontier {
                for s in steps {
                    let v = u.mul(s);
                    if !dist.contains_key(&v) {
                        dist.insert(v.clone(), r);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        Self { radius, dist }
    }

    /// Exact length of `target` if it is at most `budget`.
    ///
    /// The first BFS layer around `target` meeting the ball already realizes
    /// the minimum: a hit at layer `r` has length at least `|target|`, and a
    /// geodesic point lies in layer `max(0, |target| - radius)`.
    pub(crate) fn search(&self, target: &Word, steps: &[Word], budget: u32) -> Option<u32> {
        let outer = budget.saturating_sub(self.radius);
        let mut seen = HashSet::new();
        seen.insert(target.clone());
        let mut frontier = vec![target.clone()];
        for r in 0..=outer {
            let best = frontier.iter().filter_map(|u| self.dist.get(u)).min();
            if let Some(&d) = best {
                return Some(r + d);
            }
            if r == outer {
                break;
            }
            let mut next = Vec::new();
            for u in &frontier {
                for s in steps {
                    let v = u.mul(s);
                    if seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        None
    }
}
