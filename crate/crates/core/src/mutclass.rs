//! Exchange-graph exploration: mutation classes, mutation-finiteness and
//! certification of companions along whole classes.

use crate::companion::{
    admissibility, is_companion, is_fully_compatible, mismatches, mutate_companion, sign_normalize, CycleCheck,
    Inertia,
};
use crate::error::{Error, Result};
use crate::quiver::{canonical_form, Quiver};
use crate::Companion;
use rayon::prelude::*;
use std::collections::HashMap;

pub const DEFAULT_MEMBER_CAP: usize = 100_000;

/// How members of a class are identified.
pub const QUOTIENT: &str = "isomorphism";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassOptions {
    pub member_cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for ClassOptions {
    fn default() -> Self {
        Self {
            member_cap: DEFAULT_MEMBER_CAP,
            jobs: None,
        }
    }
}

/// Companion data recorded for one certified state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCertificate {
    /// Index into `members` of the state's quiver.
    pub member: usize,
    /// Mutation sequence from the input reaching this state.
    pub path: Vec<usize>,
    /// Companion in the member's canonical labeling.
    pub companion: Companion,
    pub inertia: Inertia,
    pub fully_compatible: bool,
    pub admissible: bool,
}

/// One direction in which companion mutation fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionFailure {
    /// Vertex in the labeling of the input quiver.
    pub k: usize,
    /// Pairs where the mutated matrix is not a companion of the mutated quiver.
    pub mismatches: Vec<(usize, usize)>,
    /// Chordless cycles violating admissibility, when that is required.
    pub cycle_failures: Vec<CycleCheck>,
}

/// First state at which some mutation of the companion fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Mutations from the input quiver reaching the state.
    pub path: Vec<usize>,
    /// Quiver and companion at the state, in the input labeling.
    pub quiver: Quiver,
    pub companion: Companion,
    pub failures: Vec<DirectionFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationClassReport {
    pub finite: bool,
    /// Canonical forms, pairwise non-isomorphic, sorted.
    pub members: Vec<Quiver>,
    /// `(member, k, member')` with `k` in the canonical labeling of `member`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Mutations from the input to a quiver with an arrow of weight >= 3
    /// in a component of at least three vertices.
    pub witness: Option<Vec<usize>>,
    pub certificates: Vec<StateCertificate>,
    pub violation: Option<Violation>,
    pub quotient: &'static str,
}

impl MutationClassReport {
    /// Twin certification succeeded: every state was explored without a
    /// violation.
    pub fn certified(&self) -> bool {
        self.finite && self.violation.is_none() && !self.certificates.is_empty()
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Whether some arrow of weight at least 3 lies in a connected component
/// with at least three vertices.
pub fn has_heavy_arrow(q: &Quiver) -> bool {
    if q.max_weight() < 3 {
        return false;
    }
    q.components()
        .iter()
        .filter(|c| c.len() >= 3)
        .any(|c| c.iter().any(|&i| c.iter().any(|&j| q.get(i, j).abs() >= 3)))
}

struct Node {
    rep: Quiver,
    perm: Vec<usize>,
    path: Vec<usize>,
}

// mutation vertex, canonical form, canonical permutation, mutated quiver
type Child = (usize, Quiver, Vec<usize>, Quiver);

/// Breadth-first enumeration of the mutation class of `q` up to
/// isomorphism.
///
/// Stops with `finite = false` and a witness as soon as a member has an
/// arrow of weight at least 3 in a component of three or more vertices;
/// such quivers are mutation-infinite. Exceeding `member_cap` is an error.
pub fn enumerate_class(q: &Quiver, opts: ClassOptions) -> Result<MutationClassReport> {
    if opts.member_cap == 0 {
        return Err(Error::CapExceeded { cap: 0 });
    }
    with_pool(opts.jobs, || explore(q, opts.member_cap))
}

fn explore(q: &Quiver, cap: usize) -> Result<MutationClassReport> {
    let q = q.unlabeled();
    let n = q.n();
    let root = canonical_form(&q);
    let mut index: HashMap<Quiver, usize> = HashMap::new();
    let mut canon: Vec<Quiver> = vec![root.quiver.clone()];
    let mut nodes = vec![Node {
        rep: q.clone(),
        perm: root.perm,
        path: Vec::new(),
    }];
    index.insert(root.quiver, 0);
    let mut edges = Vec::new();
    let mut witness = has_heavy_arrow(&q).then(Vec::new);
    let mut frontier = vec![0usize];

    while witness.is_none() && !frontier.is_empty() {
        let expanded: Vec<Vec<Child>> = frontier
            .par_iter()
            .map(|&m| {
                let rep = &nodes[m].rep;
                (0..n)
                    .map(|k| {
                        let child = rep.mutate(k).expect("vertex in range");
                        let c = canonical_form(&child);
                        (k, c.quiver, c.perm, child)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        'levels: for (&m, children) in frontier.iter().zip(expanded) {
            for (k, key, perm, child) in children {
                let target = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        if nodes.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        let t = nodes.len();
                        let mut path = nodes[m].path.clone();
                        path.push(k);
                        let heavy = has_heavy_arrow(&child);
                        index.insert(key.clone(), t);
                        canon.push(key);
                        nodes.push(Node {
                            rep: child,
                            perm,
                            path,
                        });
                        next.push(t);
                        if heavy {
                            witness = Some(nodes[t].path.clone());
                            break 'levels;
                        }
                        t
                    }
                };
                edges.push((m, nodes[m].perm[k], target));
            }
        }
        frontier = next;
    }

    let finite = witness.is_none();
    let (members, edges) = sort_members(canon, edges);
    Ok(MutationClassReport {
        finite,
        members,
        edges,
        witness,
        certificates: Vec::new(),
        violation: None,
        quotient: QUOTIENT,
    })
}

// Sorts members and rewrites edges; returns the new positions too.
fn sort_members(
    canon: Vec<Quiver>,
    edges: Vec<(usize, usize, usize)>,
) -> (Vec<Quiver>, Vec<(usize, usize, usize)>) {
    let (members, remap) = sorted_with_map(canon);
    let mut edges: Vec<_> = edges
        .into_iter()
        .map(|(a, k, b)| (remap[a], k, remap[b]))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    (members, edges)
}

fn sorted_with_map(items: Vec<Quiver>) -> (Vec<Quiver>, Vec<usize>) {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[a].cmp(&items[b]));
    let mut remap = vec![0; items.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let mut slots: Vec<Option<Quiver>> = items.into_iter().map(Some).collect();
    let members = order.iter().map(|&o| slots[o].take().unwrap()).collect();
    (members, remap)
}

/// Result of a mutation-finiteness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finiteness {
    pub finite: bool,
    pub witness: Option<Vec<usize>>,
    /// Class size up to isomorphism, when finite.
    pub class_size: Option<usize>,
}

/// Decides whether the mutation class of `q` is finite.
///
/// Rank-2 quivers are always mutation-finite. Otherwise the class is
/// explored while every component of three or more vertices keeps arrow
/// weights at most 2; there are finitely many such quivers, so the search
/// terminates, and meeting a heavier arrow proves infiniteness.
pub fn is_mutation_finite(q: &Quiver, jobs: Option<usize>) -> Result<Finiteness> {
    if q.n() <= 2 {
        return Ok(Finiteness {
            finite: true,
            witness: None,
            class_size: Some(1),
        });
    }
    let report = enumerate_class(
        q,
        ClassOptions {
            member_cap: usize::MAX,
            jobs,
        },
    )?;
    Ok(Finiteness {
        finite: report.finite,
        class_size: report.finite.then_some(report.members.len()),
        witness: report.witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwinOptions {
    pub require_admissible: bool,
    pub state_cap: usize,
    pub jobs: Option<usize>,
}

impl Default for TwinOptions {
    fn default() -> Self {
        Self {
            require_admissible: false,
            state_cap: DEFAULT_MEMBER_CAP,
            jobs: None,
        }
    }
}

struct State {
    quiver: Quiver,
    companion: Companion,
    path: Vec<usize>,
    perm: Vec<usize>,
    key_companion: Companion,
    member: usize,
}

enum Step {
    Ok(Vec<(usize, Quiver, Companion)>),
    Fail(Vec<DirectionFailure>),
}

/// Checks that `a` mutates to a companion (and, if requested, to an
/// admissible companion) along every mutation sequence of `q`.
///
/// States are pairs of a canonical quiver and the companion transported
/// to its labeling. When the input companion is admissible the companion
/// is also reduced modulo simultaneous sign changes, which commute with
/// mutation and preserve admissibility. Exploration stops at the first
/// state (in breadth-first order) with a failing direction, and reports
/// every failing direction there.
pub fn certify_symmetric_twin(q: &Quiver, a: &Companion, opts: TwinOptions) -> Result<MutationClassReport> {
    if !is_companion(a, q)? {
        let (i, j) = mismatches(a, q)[0];
        return Err(Error::NotCompanion { i, j });
    }
    let finiteness = is_mutation_finite(q, opts.jobs)?;
    if !finiteness.finite {
        return Err(Error::NotMutationFinite);
    }
    let quotient_signs = admissibility(a, q)?.admissible;
    let cap = opts.state_cap;
    with_pool(opts.jobs, || twin_search(q, a, opts.require_admissible, quotient_signs, cap))
}

fn state_key(quiver: &Quiver, companion: &Companion, quotient_signs: bool) -> (Quiver, Vec<usize>, Companion) {
    let c = canonical_form(quiver);
    let moved = companion.permuted(&c.perm);
    let key = if quotient_signs { sign_normalize(&moved).0 } else { moved };
    (c.quiver, c.perm, key)
}

fn twin_search(
    q: &Quiver,
    a: &Companion,
    require_admissible: bool,
    quotient_signs: bool,
    cap: usize,
) -> Result<MutationClassReport> {
    let q = q.unlabeled();
    let n = q.n();
    let mut members: Vec<Quiver> = Vec::new();
    let mut member_index: HashMap<Quiver, usize> = HashMap::new();
    let mut state_index: HashMap<(Quiver, Companion), usize> = HashMap::new();
    let mut states: Vec<State> = Vec::new();
    let mut edges = Vec::new();

    let mut insert = |quiver: Quiver,
                      companion: Companion,
                      path: Vec<usize>,
                      states: &mut Vec<State>,
                      members: &mut Vec<Quiver>|
     -> Result<(usize, bool)> {
        let (canon, perm, key_companion) = state_key(&quiver, &companion, quotient_signs);
        let member = *member_index.entry(canon.clone()).or_insert_with(|| {
            members.push(canon.clone());
            members.len() - 1
        });
        let key = (canon, key_companion.clone());
        if let Some(&s) = state_index.get(&key) {
            return Ok((s, false));
        }
        if states.len() >= cap {
            return Err(Error::CapExceeded { cap });
        }
        let s = states.len();
        state_index.insert(key, s);
        states.push(State {
            quiver,
            companion,
            path,
            perm,
            key_companion,
            member,
        });
        Ok((s, true))
    };

    insert(q.clone(), a.clone(), Vec::new(), &mut states, &mut members)?;
    let mut frontier = vec![0usize];
    let mut violation = None;
    while !frontier.is_empty() && violation.is_none() {
        let steps: Vec<Step> = frontier
            .par_iter()
            .map(|&s| expand(&states[s], n, require_admissible))
            .collect();
        let mut next = Vec::new();
        for (&s, step) in frontier.iter().zip(steps) {
            match step {
                Step::Fail(failures) => {
                    violation = Some(Violation {
                        path: states[s].path.clone(),
                        quiver: states[s].quiver.clone(),
                        companion: states[s].companion.clone(),
                        failures,
                    });
                    break;
                }
                Step::Ok(children) => {
                    for (k, cq, ca) in children {
                        let mut path = states[s].path.clone();
                        path.push(k);
                        let (t, fresh) = insert(cq, ca, path, &mut states, &mut members)?;
                        if fresh {
                            next.push(t);
                        }
                        edges.push((states[s].member, states[s].perm[k], states[t].member));
                    }
                }
            }
        }
        frontier = next;
    }

    let (members, remap) = sorted_with_map(members);
    let mut edges: Vec<_> = edges
        .into_iter()
        .map(|(x, k, y)| (remap[x], k, remap[y]))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mut certificates: Vec<StateCertificate> = states
        .par_iter()
        .map(|st| {
            let member = remap[st.member];
            let quiver = &members[member];
            let companion = st.key_companion.clone();
            StateCertificate {
                member,
                path: st.path.clone(),
                inertia: companion.inertia(),
                fully_compatible: is_fully_compatible(&companion, quiver).unwrap_or(false),
                admissible: admissibility(&companion, quiver)
                    .map(|r| r.admissible)
                    .unwrap_or(false),
                companion,
            }
        })
        .collect();
    certificates.sort_by(|x, y| (x.member, &x.companion, &x.path).cmp(&(y.member, &y.companion, &y.path)));
    Ok(MutationClassReport {
        finite: true,
        members,
        edges,
        witness: None,
        certificates,
        violation,
        quotient: QUOTIENT,
    })
}

fn expand(state: &State, n: usize, require_admissible: bool) -> Step {
    let mut children = Vec::with_capacity(n);
    let mut failures = Vec::new();
    for k in 0..n {
        let mq = state.quiver.mutate(k).expect("vertex in range");
        let ma = mutate_companion(&state.companion, &state.quiver, k).expect("state holds a companion");
        let bad = mismatches(&ma, &mq);
        let cycle_failures = if bad.is_empty() && require_admissible {
            admissibility(&ma, &mq).expect("companion checked").failures
        } else {
            Vec::new()
        };
        if bad.is_empty() && cycle_failures.is_empty() {
            children.push((k, mq, ma));
        } else {
            failures.push(DirectionFailure {
                k,
                mismatches: bad,
                cycle_failures,
            });
        }
    }
    if failures.is_empty() {
        Step::Ok(children)
    } else {
        Step::Fail(failures)
    }
}
