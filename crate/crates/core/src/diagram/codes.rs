use std::collections::{BTreeMap, HashMap};

use super::{Crossing, LinkDiagram, Passage, Sign};
use crate::error::{Error, Result};

fn parse_pd_entries(text: &str) -> Result<Vec<[usize; 4]>> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix("PD[").and_then(|s| s.strip_suffix(']')) {
        body = inner;
    }
    let mut entries = Vec::new();
    let mut rest = body;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let after = rest
            .strip_prefix("X[")
            .ok_or_else(|| Error::MalformedPd(format!("expected `X[` at `{}`", truncate(rest))))?;
        let close = after.find(']').ok_or_else(|| Error::MalformedPd("unterminated `X[`".into()))?;
        let labels: Vec<usize> = after[..close]
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::MalformedPd(format!("bad arc label `{}`", s.trim())))
            })
            .collect::<Result<_>>()?;
        let labels: [usize; 4] = labels
            .try_into()
            .map_err(|v: Vec<usize>| Error::MalformedPd(format!("crossing with {} labels", v.len())))?;
        entries.push(labels);
        rest = &after[close + 1..];
    }
    Ok(entries)
}

fn truncate(s: &str) -> String {
    s.chars().take(16).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum OverDir {
    Unknown,
    /// Over strand enters at slot d and leaves at slot b (positive crossing).
    DtoB,
    BtoD,
}

/// `Some(true)` when the edge enters the crossing at this slot.
fn slot_enters(slot: usize, dir: OverDir) -> Option<bool> {
    match (slot, dir) {
        (0, _) => Some(true),
        (2, _) => Some(false),
        (_, OverDir::Unknown) => None,
        (1, OverDir::DtoB) | (3, OverDir::BtoD) => Some(false),
        _ => Some(true),
    }
}

fn dir_for(slot: usize, enters: bool) -> OverDir {
    match (slot, enters) {
        (1, false) | (3, true) => OverDir::DtoB,
        _ => OverDir::BtoD,
    }
}

/// Rebuilds a combinatorial diagram from PD text such as
/// `X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]`.
///
/// Orientation of each over strand is inferred from the under strands; for
/// components that never pass under, consecutive labels decide.
pub fn diagram_from_pd(text: &str) -> Result<LinkDiagram> {
    let entries = parse_pd_entries(text)?;
    if entries.is_empty() {
        return Ok(LinkDiagram::unknot());
    }
    let mut occurrences: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, e) in entries.iter().enumerate() {
        for (slot, &label) in e.iter().enumerate() {
            occurrences.entry(label).or_default().push((x, slot));
        }
    }
    if let Some((label, occ)) = occurrences.iter().find(|(_, o)| o.len() != 2) {
        return Err(Error::InconsistentArcs(format!("arc {label} appears {} times", occ.len())));
    }
    let mut dirs = vec![OverDir::Unknown; entries.len()];
    loop {
        propagate(&occurrences, &mut dirs)?;
        let Some(x) = dirs.iter().position(|d| *d == OverDir::Unknown) else { break };
        let [_, b, _, d] = entries[x];
        dirs[x] = if d + 1 == b || (b + 1 != d && b < d) { OverDir::DtoB } else { OverDir::BtoD };
    }

    // passage key: (crossing, over) -> (in label, out label)
    let mut by_in: BTreeMap<usize, (usize, bool, usize)> = BTreeMap::new();
    for (x, e) in entries.iter().enumerate() {
        let (over_in, over_out) = match dirs[x] {
            OverDir::DtoB => (e[3], e[1]),
            _ => (e[1], e[3]),
        };
        for (label_in, over, label_out) in [(e[0], false, e[2]), (over_in, true, over_out)] {
            if by_in.insert(label_in, (x, over, label_out)).is_some() {
                return Err(Error::InconsistentArcs(format!("arc {label_in} enters two crossings")));
            }
        }
    }
    let mut components = Vec::new();
    let mut visited: HashMap<usize, bool> = HashMap::new();
    for &start in by_in.keys() {
        if visited.contains_key(&start) {
            continue;
        }
        let mut comp = Vec::new();
        let mut label = start;
        while visited.insert(label, true).is_none() {
            let &(x, over, out) = by_in
                .get(&label)
                .ok_or_else(|| Error::InconsistentArcs(format!("arc {label} never enters a crossing")))?;
            comp.push(Passage { crossing: x + 1, over });
            label = out;
        }
        if label != start {
            return Err(Error::InconsistentArcs("traversal does not close up".into()));
        }
        components.push(comp);
    }
    let crossings = dirs
        .iter()
        .enumerate()
        .map(|(x, d)| Crossing::combinatorial(x + 1, if *d == OverDir::DtoB { Sign::Positive } else { Sign::Negative }))
        .collect();
    LinkDiagram::new(components, crossings).map_err(|e| Error::InconsistentArcs(e.to_string()))
}

fn propagate(occurrences: &BTreeMap<usize, Vec<(usize, usize)>>, dirs: &mut [OverDir]) -> Result<()> {
    let mut changed = true;
    while changed {
        changed = false;
        for (label, occ) in occurrences {
            let (x0, s0) = occ[0];
            let (x1, s1) = occ[1];
            let e0 = slot_enters(s0, dirs[x0]);
            let e1 = slot_enters(s1, dirs[x1]);
            match (e0, e1) {
                (Some(a), Some(b)) if a == b => {
                    return Err(Error::InconsistentArcs(format!(
                        "arc {label} {} at both ends",
                        if a { "enters" } else { "leaves" }
                    )))
                }
                (Some(a), None) => {
                    dirs[x1] = dir_for(s1, !a);
                    changed = true;
                }
                (None, Some(b)) => {
                    dirs[x0] = dir_for(s0, !b);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Parses the signed Gauss code produced by [`LinkDiagram::gauss_code`].
pub fn diagram_from_gauss(text: &str) -> Result<LinkDiagram> {
    let mut signs: BTreeMap<usize, Sign> = BTreeMap::new();
    let mut components = Vec::new();
    for comp_text in text.trim().split(';') {
        let mut comp = Vec::new();
        for token in comp_text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || Error::MalformedGauss(format!("bad entry `{token}`"));
            let mut chars = token.chars();
            let over = match chars.next() {
                Some('O') => true,
                Some('U') => false,
                _ => return Err(bad()),
            };
            let sign = match chars.next() {
                Some('+') => Sign::Positive,
                Some('-') => Sign::Negative,
                _ => return Err(bad()),
            };
            let id: usize = chars.as_str().parse().map_err(|_| bad())?;
            if *signs.entry(id).or_insert(sign) != sign {
                return Err(Error::MalformedGauss(format!("crossing {id} has two signs")));
            }
            comp.push(Passage { crossing: id, over });
        }
        components.push(comp);
    }
    let crossings = signs.into_iter().map(|(id, s)| Crossing::combinatorial(id, s)).collect();
    LinkDiagram::new(components, crossings)
}
