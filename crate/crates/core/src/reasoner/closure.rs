//! Reflexive-transitive subsumption over the asserted taxonomy.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::Ontology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("subsumption cycle through {}", .members.join(", "))]
pub struct CycleError {
    pub members: Vec<String>,
}

/// For every pair of known names, whether the first subsumes the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumptionClosure {
    index: BTreeMap<String, usize>,
    names: Vec<String>,
    /// `ancestors[i]` has bit `j` set iff `names[j]` subsumes `names[i]`.
    ancestors: Vec<Bits>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

impl SubsumptionClosure {
    /// Builds the closure of `(child, parent)` edges. Names mentioned only in
    /// edges are added as nodes.
    pub fn from_edges<'a, N, E>(nodes: N, edges: E) -> Result<Self, CycleError>
    where
        N: IntoIterator<Item = &'a str>,
        E: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        for n in nodes {
            index.entry(n.to_string()).or_insert(0);
        }
        let edges: Vec<(&str, &str)> = edges.into_iter().collect();
        for (c, p) in &edges {
            index.entry(c.to_string()).or_insert(0);
            index.entry(p.to_string()).or_insert(0);
        }
        let names: Vec<String> = index.keys().cloned().collect();
        for (i, n) in names.iter().enumerate() {
            index.insert(n.clone(), i);
        }
        let n = names.len();
        let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (c, p) in &edges {
            let (ci, pi) = (index[*c], index[*p]);
            if !parents[ci].contains(&pi) {
                parents[ci].push(pi);
                children[pi].push(ci);
            }
        }

        // Kahn: a node is ready once all of its parents are done.
        let mut pending: Vec<usize> = parents.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
        let mut ancestors: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        let mut done = 0;
        while let Some(i) = ready.pop() {
            done += 1;
            let mut bits = Bits::new(n);
            bits.set(i);
            for &p in &parents[i] {
                bits.union_with(&ancestors[p]);
            }
            ancestors[i] = bits;
            for &c in &children[i] {
                pending[c] -= 1;
                if pending[c] == 0 {
                    ready.push(c);
                }
            }
        }
        if done < n {
            let cycles = find_cycles(names.iter().map(String::as_str), edges.iter().copied());
            let members = cycles.into_iter().next().unwrap_or_default();
            return Err(CycleError { members });
        }
        Ok(Self {
            index,
            names,
            ancestors,
        })
    }

    /// True iff every instance of `sub` is necessarily an instance of `sup`.
    pub fn subsumes(&self, sup: &str, sub: &str) -> bool {
        match (self.index.get(sup), self.index.get(sub)) {
            (Some(&p), Some(&c)) => self.ancestors[c].get(p),
            _ => false,
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// Every subsumer of `name`, itself included, in name order.
    pub fn ancestors(&self, name: &str) -> Vec<&str> {
        match self.index.get(name) {
            Some(&i) => self.ancestors[i].ones().map(|j| self.names[j].as_str()).collect(),
            None => Vec::new(),
        }
    }

    /// Strict subsumers of `name`.
    pub fn strict_ancestors(&self, name: &str) -> Vec<&str> {
        let mut v = self.ancestors(name);
        v.retain(|a| *a != name);
        v
    }

    /// Every concept subsumed by `name`, itself included.
    pub fn descendants(&self, name: &str) -> Vec<&str> {
        match self.index.get(name) {
            Some(&p) => (0..self.names.len())
                .filter(|&c| self.ancestors[c].get(p))
                .map(|c| self.names[c].as_str())
                .collect(),
            None => Vec::new(),
        }
    }

    /// Most specific members of `candidates` that strictly subsume `name`.
    pub fn nearest_among<'a>(&self, name: &str, candidates: &[&'a str]) -> Vec<&'a str> {
        let above: Vec<&str> = candidates
            .iter()
            .copied()
            .filter(|c| *c != name && self.subsumes(c, name))
            .collect();
        above
            .iter()
            .copied()
            .filter(|a| !above.iter().any(|b| b != a && self.subsumes(a, b)))
            .collect()
    }
}

/// Subsumption closure of an ontology's concepts.
pub fn closure(ontology: &Ontology) -> Result<SubsumptionClosure, CycleError> {
    SubsumptionClosure::from_edges(
        ontology.concepts().map(|c| c.name.as_str()),
        ontology.taxonomy_edges(),
    )
}

/// Groups of names lying on a common cycle (including self-loops), each
/// group sorted, groups ordered by their first member.
pub fn find_cycles<'a, N, E>(nodes: N, edges: E) -> Vec<Vec<String>>
where
    N: IntoIterator<Item = &'a str>,
    E: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for n in nodes {
        succ.entry(n).or_default();
    }
    for (c, p) in edges {
        succ.entry(c).or_default().push(p);
        succ.entry(p).or_default();
    }
    let reach = |from: &str| -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        let mut stack: Vec<&str> = succ[from].clone();
        while let Some(x) = stack.pop() {
            if !seen.contains(&x) {
                seen.push(x);
                stack.extend(succ[x].iter().copied());
            }
        }
        seen
    };
    let reachable: BTreeMap<&str, Vec<&str>> = succ.keys().map(|&n| (n, reach(n))).collect();
    let mut groups: Vec<Vec<String>> = Vec::new();
    for (&n, r) in &reachable {
        if !r.contains(&n) || groups.iter().any(|g| g.iter().any(|m| m == n)) {
            continue;
        }
        let mut group: Vec<String> = reachable
            .iter()
            .filter(|(m, rm)| rm.contains(&n) && r.contains(m))
            .map(|(m, _)| m.to_string())
            .collect();
        group.sort();
        groups.push(group);
    }
    groups
}
