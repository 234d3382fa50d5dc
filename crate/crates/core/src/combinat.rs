//! Exhaustive enumeration of colonies, settlements and increasing forests.
//!
//! A bug of type `(r, s)` has a body of `r` linearly ordered cells and `s`
//! labelled feet. Bugs are placed in index order; each foot of bug `j > 1`
//! either stands on the ground or occupies an empty cell of an earlier bug.
//! Feet carry consecutive labels, bug 1 using `1..=s_1`.
//!
//! Enumeration order is canonical: feet in label order, and for each foot the
//! options Ground first, then cells ordered by `(bug, cell)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::stirling::{bell_number, settlement_product, stirling_recurrence};
use crate::types::StringType;

/// Default cap on the number of structures an enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Where a foot stands. Bugs and cells are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Placement {
    Ground,
    Cell { bug: usize, cell: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colony {
    ty: StringType,
    /// indexed by foot label − 1
    placements: Vec<Placement>,
}

impl Colony {
    /// Validates a placement list against the colony rules.
    pub fn new(ty: StringType, placements: Vec<Placement>) -> Result<Self> {
        let owners = foot_owners(&ty);
        if placements.len() != owners.len() {
            return Err(Error::InvalidType(format!(
                "expected {} feet, got {}",
                owners.len(),
                placements.len()
            )));
        }
        let mut used = std::collections::HashSet::new();
        for (idx, p) in placements.iter().enumerate() {
            if let Placement::Cell { bug, cell } = *p {
                let owner = owners[idx];
                if bug == 0 || bug >= owner || cell == 0 || cell > ty.r()[bug - 1] as usize {
                    return Err(Error::InvalidType(format!(
                        "foot {} cannot stand in bug {bug} cell {cell}",
                        idx + 1
                    )));
                }
                if !used.insert((bug, cell)) {
                    return Err(Error::InvalidType(format!(
                        "bug {bug} cell {cell} holds two feet"
                    )));
                }
            }
        }
        Ok(Colony { ty, placements })
    }

    pub fn ty(&self) -> &StringType {
        &self.ty
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    /// Number of feet on the ground.
    pub fn free_legs(&self) -> usize {
        self.placements
            .iter()
            .filter(|p| **p == Placement::Ground)
            .count()
    }

    /// One line per foot: `foot <label> -> ground` or
    /// `foot <label> -> bug <i> cell <c>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (idx, p) in self.placements.iter().enumerate() {
            match p {
                Placement::Ground => writeln!(out, "foot {} -> ground", idx + 1),
                Placement::Cell { bug, cell } => {
                    writeln!(out, "foot {} -> bug {bug} cell {cell}", idx + 1)
                }
            }
            .unwrap();
        }
        out
    }

    /// Graphviz rendering of the foot → cell graph.
    pub fn to_dot(&self) -> String {
        let owners = foot_owners(&self.ty);
        let mut out = String::from("digraph colony {\n  rankdir=BT;\n  ground [shape=box];\n");
        for (b, &r) in self.ty.r().iter().enumerate() {
            let cells: Vec<String> = (1..=r).map(|c| format!("<c{c}> {c}")).collect();
            writeln!(
                out,
                "  bug{} [shape=record, label=\"bug {}|{}\"];",
                b + 1,
                b + 1,
                cells.join("|")
            )
            .unwrap();
        }
        for (idx, p) in self.placements.iter().enumerate() {
            let from = format!("bug{}", owners[idx]);
            let to = match p {
                Placement::Ground => "ground".to_string(),
                Placement::Cell { bug, cell } => format!("bug{bug}:c{cell}"),
            };
            writeln!(out, "  {from} -> {to} [label=\"{}\"];", idx + 1).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Number of body cells of `c` holding no foot, counted directly.
pub fn empty_cells(c: &Colony) -> usize {
    let occupied = c
        .placements
        .iter()
        .filter(|p| matches!(p, Placement::Cell { .. }))
        .count();
    c.ty.total_r() - occupied
}

/// Bug index (1-based) owning each foot, indexed by label − 1.
fn foot_owners(t: &StringType) -> Vec<usize> {
    t.s()
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b + 1, s as usize))
        .collect()
}

fn check_cap(predicted: &BigUint, cap: u64) -> Result<()> {
    if *predicted > BigUint::from(cap) {
        return Err(Error::TooLarge {
            predicted: predicted.to_string(),
            cap,
        });
    }
    Ok(())
}

/// Where a foot of a settlement stands: a numbered ground cell or a body cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Spot {
    Ground(usize),
    Body { bug: usize, cell: usize },
}

/// Depth-first walk over foot placements shared by colony and settlement
/// enumeration. With `ground_cells = None` the ground is a single sink;
/// otherwise feet go injectively into that many numbered ground cells.
struct Walker<'a> {
    owners: Vec<usize>,
    r: &'a [u32],
    occupied: Vec<Vec<bool>>,
    ground_used: Vec<bool>,
    ground_cells: Option<usize>,
    spots: Vec<Spot>,
}

impl<'a> Walker<'a> {
    fn new(t: &'a StringType, ground_cells: Option<usize>) -> Self {
        Walker {
            owners: foot_owners(t),
            r: t.r(),
            occupied: t.r().iter().map(|&r| vec![false; r as usize]).collect(),
            ground_used: vec![false; ground_cells.unwrap_or(0)],
            ground_cells,
            spots: Vec::new(),
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Spot])) {
        let foot = self.spots.len();
        if foot == self.owners.len() {
            visit(&self.spots);
            return;
        }
        match self.ground_cells {
            None => {
                self.spots.push(Spot::Ground(0));
                self.run(visit);
                self.spots.pop();
            }
            Some(m) => {
                for g in 0..m {
                    if self.ground_used[g] {
                        continue;
                    }
                    self.ground_used[g] = true;
                    self.spots.push(Spot::Ground(g + 1));
                    self.run(visit);
                    self.spots.pop();
                    self.ground_used[g] = false;
                }
            }
        }
        let owner = self.owners[foot];
        for bug in 1..owner {
            for cell in 1..=self.r[bug - 1] as usize {
                if self.occupied[bug - 1][cell - 1] {
                    continue;
                }
                self.occupied[bug - 1][cell - 1] = true;
                self.spots.push(Spot::Body { bug, cell });
                self.run(visit);
                self.spots.pop();
                self.occupied[bug - 1][cell - 1] = false;
            }
        }
    }
}

fn spots_to_placements(spots: &[Spot]) -> Vec<Placement> {
    spots
        .iter()
        .map(|s| match *s {
            Spot::Ground(_) => Placement::Ground,
            Spot::Body { bug, cell } => Placement::Cell { bug, cell },
        })
        .collect()
}

/// Visits every colony of type `t` in canonical order.
pub fn for_each_colony(t: &StringType, cap: u64, mut visit: impl FnMut(&Colony)) -> Result<()> {
    check_cap(&bell_number(t), cap)?;
    let mut walker = Walker::new(t, None);
    walker.run(&mut |spots| {
        let colony = Colony {
            ty: t.clone(),
            placements: spots_to_placements(spots),
        };
        visit(&colony);
    });
    Ok(())
}

/// All colonies of type `t` in canonical order; fails with `TooLarge` when
/// the Bell number of `t` exceeds `cap`.
pub fn enumerate_colonies(t: &StringType, cap: u64) -> Result<Vec<Colony>> {
    let mut out = Vec::new();
    for_each_colony(t, cap, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Colony counts by number of free legs, by enumeration.
pub fn count_colonies_by_free_legs(t: &StringType, cap: u64) -> Result<BTreeMap<usize, BigUint>> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for_each_colony(t, cap, |c| *counts.entry(c.free_legs()).or_default() += 1)?;
    Ok(counts.into_iter().map(|(k, v)| (k, v.into())).collect())
}

/// Colony counts by number of free legs via the placement recursion, for
/// types too large to enumerate.
pub fn count_colonies_by_free_legs_recursive(t: &StringType) -> BTreeMap<usize, BigUint> {
    stirling_recurrence(t).values
}

/// A colony whose free feet are placed injectively into `ground_cells`
/// numbered ground cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settlement {
    pub colony: Colony,
    pub ground_cells: usize,
    /// `(foot label, ground cell)` for every free foot, by label
    pub ground_assignment: Vec<(usize, usize)>,
}

impl Settlement {
    pub fn is_surjective(&self) -> bool {
        self.ground_assignment.len() == self.ground_cells
    }

    /// Colony lines with free feet written as `foot <label> -> ground <g>`.
    pub fn to_text(&self) -> String {
        let assigned: BTreeMap<usize, usize> = self.ground_assignment.iter().copied().collect();
        let mut out = String::new();
        for (idx, p) in self.colony.placements.iter().enumerate() {
            let label = idx + 1;
            match p {
                Placement::Ground => writeln!(out, "foot {label} -> ground {}", assigned[&label]),
                Placement::Cell { bug, cell } => {
                    writeln!(out, "foot {label} -> bug {bug} cell {cell}")
                }
            }
            .unwrap();
        }
        out
    }
}

fn settlement_prediction(t: &StringType, m: u64) -> BigUint {
    settlement_product(t, m).to_biguint().unwrap_or_default()
}

fn check_ground(m: u64) -> Result<usize> {
    usize::try_from(m).map_err(|_| Error::InvalidType(format!("{m} ground cells")))
}

/// Number of `m`-settlements of type `t`, by walking every placement of
/// every foot.
pub fn enumerate_settlements(t: &StringType, m: u64, cap: u64) -> Result<BigUint> {
    check_cap(&settlement_prediction(t, m), cap)?;
    let mut walker = Walker::new(t, Some(check_ground(m)?));
    let mut count: u64 = 0;
    walker.run(&mut |_| count += 1);
    Ok(count.into())
}

/// Every `m`-settlement of type `t`, in canonical order.
pub fn settlements(t: &StringType, m: u64, cap: u64) -> Result<Vec<Settlement>> {
    check_cap(&settlement_prediction(t, m), cap)?;
    let ground_cells = check_ground(m)?;
    let mut walker = Walker::new(t, Some(ground_cells));
    let mut out = Vec::new();
    walker.run(&mut |spots| {
        let ground_assignment = spots
            .iter()
            .enumerate()
            .filter_map(|(idx, s)| match *s {
                Spot::Ground(g) => Some((idx + 1, g)),
                Spot::Body { .. } => None,
            })
            .collect();
        out.push(Settlement {
            colony: Colony {
                ty: t.clone(),
                placements: spots_to_placements(spots),
            },
            ground_cells,
            ground_assignment,
        });
    });
    Ok(out)
}

/// Number of `m`-settlements occupying every ground cell.
pub fn count_surjective_settlements(t: &StringType, m: u64, cap: u64) -> Result<BigUint> {
    let predicted = stirling_recurrence(t).get(m as usize) * factorial(m);
    check_cap(&predicted, cap)?;
    if (m as usize) > t.total_s() || (m as usize) < t.first_s() {
        return Ok(BigUint::zero());
    }
    // walk only colonies with exactly m free legs, then every bijection onto
    // the ground cells
    let ground_cells = check_ground(m)?;
    let mut count: u64 = 0;
    let mut colony_walker = Walker::new(t, None);
    colony_walker.run(&mut |spots| {
        let free = spots
            .iter()
            .filter(|s| matches!(s, Spot::Ground(_)))
            .count();
        if free == ground_cells {
            count += count_bijections(ground_cells);
        }
    });
    Ok(count.into())
}

/// Counts bijections of an `n`-set onto itself by walking them.
fn count_bijections(n: usize) -> u64 {
    fn walk(used: &mut [bool], depth: usize) -> u64 {
        if depth == used.len() {
            return 1;
        }
        let mut total = 0;
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                total += walk(used, depth + 1);
                used[i] = false;
            }
        }
        total
    }
    walk(&mut vec![false; n], 0)
}

/// A forest of increasing planar trees. Vertex `j` (1-based) has
/// `arities[j−1]` ordered leaf slots; `parent[j−1]` is `None` for a root or
/// `(i, slot)` when `j` hangs from slot `slot` of vertex `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncreasingForest {
    arities: Vec<u32>,
    parent: Vec<Option<(usize, usize)>>,
}

impl IncreasingForest {
    pub fn new(arities: Vec<u32>, parent: Vec<Option<(usize, usize)>>) -> Result<Self> {
        if arities.len() != parent.len() {
            return Err(Error::InvalidType(
                "arity and parent lists differ in length".into(),
            ));
        }
        let mut used = std::collections::HashSet::new();
        for (idx, p) in parent.iter().enumerate() {
            if let Some((i, slot)) = *p {
                let valid = i >= 1 && i <= idx && slot >= 1 && slot <= arities[i - 1] as usize;
                if !valid || !used.insert((i, slot)) {
                    return Err(Error::InvalidType(format!(
                        "vertex {} cannot hang from vertex {i} slot {slot}",
                        idx + 1
                    )));
                }
            }
        }
        Ok(IncreasingForest { arities, parent })
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, vertex: usize) -> Option<(usize, usize)> {
        self.parent[vertex - 1]
    }

    pub fn roots(&self) -> Vec<usize> {
        (1..=self.parent.len())
            .filter(|&v| self.parent[v - 1].is_none())
            .collect()
    }

    /// Slot contents of `vertex`, `None` for an empty leaf.
    pub fn children(&self, vertex: usize) -> Vec<Option<usize>> {
        let mut slots = vec![None; self.arities[vertex - 1] as usize];
        for (idx, p) in self.parent.iter().enumerate() {
            if let Some((i, slot)) = *p {
                if i == vertex {
                    slots[slot - 1] = Some(idx + 1);
                }
            }
        }
        slots
    }

    /// Labels increase along every root-to-vertex path.
    pub fn is_increasing(&self) -> bool {
        self.parent
            .iter()
            .enumerate()
            .all(|(idx, p)| p.is_none_or(|(i, _)| i < idx + 1))
    }
}

/// Maps a colony of `(r_j, 1)` bugs to its forest: bug `j` becomes vertex
/// `j`, a foot in cell `c` of bug `i` hangs `j` from slot `c` of `i`, and a
/// foot on the ground makes `j` a root.
pub fn colony_to_forest(c: &Colony) -> Result<IncreasingForest> {
    if let Some(pos) = c.ty.s().iter().position(|&s| s != 1) {
        return Err(Error::NotUnary {
            index: pos + 1,
            s: c.ty.s()[pos],
        });
    }
    let parent = c
        .placements
        .iter()
        .map(|p| match *p {
            Placement::Ground => None,
            Placement::Cell { bug, cell } => Some((bug, cell)),
        })
        .collect();
    Ok(IncreasingForest {
        arities: c.ty.r().to_vec(),
        parent,
    })
}

pub fn forest_to_colony(f: &IncreasingForest) -> Result<Colony> {
    let ty = StringType::new(f.arities.clone(), vec![1; f.arities.len()])?;
    let placements = f
        .parent
        .iter()
        .map(|p| match *p {
            None => Placement::Ground,
            Some((bug, cell)) => Placement::Cell { bug, cell },
        })
        .collect();
    Colony::new(ty, placements)
}

/// Number of increasing `r`-ary planar trees on `k` labels, from the
/// root-and-slots decomposition.
fn tree_counts(r: u32, n: usize) -> Vec<BigUint> {
    // slot[j][k]: ways to fill j ordered slots with trees (or nothing) on k labels
    let mut trees = vec![BigUint::zero(); n + 1];
    let mut slot_fill = vec![vec![BigUint::zero(); n + 1]; r as usize + 1];
    slot_fill[0][0] = BigUint::one();
    for k in 1..=n {
        // update slot_fill for totals k−1 first, needed by trees[k]
        for j in 1..=r as usize {
            let total = k - 1;
            let mut acc = BigUint::zero();
            for first in 0..=total {
                let ways_first = if first == 0 {
                    BigUint::one()
                } else {
                    trees[first].clone()
                };
                acc += binomial(total as u64, first as u64)
                    * ways_first
                    * &slot_fill[j - 1][total - first];
            }
            slot_fill[j][total] = acc;
        }
        trees[k] = slot_fill[r as usize][k - 1].clone();
    }
    trees
}

/// Predicted number of increasing `r`-forests on `n` vertices, counted by
/// splitting off the tree that contains vertex 1.
pub fn predicted_forest_count(r: u32, n: usize) -> BigUint {
    let trees = tree_counts(r, n);
    let mut forests = vec![BigUint::zero(); n + 1];
    forests[0] = BigUint::one();
    for total in 1..=n {
        forests[total] = (1..=total)
            .map(|k| binomial(total as u64 - 1, k as u64 - 1) * &trees[k] * &forests[total - k])
            .sum();
    }
    forests[n].clone()
}

type ParentEntries = Vec<(usize, Option<(usize, usize)>)>;

/// Increasing trees on the sorted label set `labels`; the smallest label is
/// the root and the others are spread over its `r` slots.
fn trees_on(labels: &[usize], r: u32) -> Vec<ParentEntries> {
    let root = labels[0];
    let rest = &labels[1..];
    let slots = r as usize;
    let mut out = Vec::new();
    let combos = slots.pow(rest.len() as u32);
    for code in 0..combos {
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); slots];
        let mut c = code;
        for &label in rest {
            groups[c % slots].push(label);
            c /= slots;
        }
        let mut partial: Vec<ParentEntries> = vec![vec![(root, None)]];
        for (slot, group) in groups.iter().enumerate() {
            if group.is_empty() {
                continue;
            }
            let subtrees = trees_on(group, r);
            let mut next = Vec::with_capacity(partial.len() * subtrees.len());
            for base in &partial {
                for sub in &subtrees {
                    let mut merged = base.clone();
                    for &(v, p) in sub {
                        merged.push((v, p.or(Some((root, slot + 1)))));
                    }
                    next.push(merged);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

fn forests_on(labels: &[usize], r: u32) -> Vec<ParentEntries> {
    if labels.is_empty() {
        return vec![Vec::new()];
    }
    let first = labels[0];
    let rest = &labels[1..];
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << rest.len()) {
        let mut block = vec![first];
        let mut others = Vec::new();
        for (i, &l) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                block.push(l);
            } else {
                others.push(l);
            }
        }
        let trees = trees_on(&block, r);
        let forests = forests_on(&others, r);
        for t in &trees {
            for f in &forests {
                let mut merged = t.clone();
                merged.extend_from_slice(f);
                out.push(merged);
            }
        }
    }
    out
}

/// Every increasing `r`-ary forest with `n` labelled internal vertices,
/// built from the tree decomposition rather than from colonies.
pub fn enumerate_increasing_forests(r: u32, n: usize, cap: u64) -> Result<Vec<IncreasingForest>> {
    if r == 0 {
        return Err(Error::InvalidType("arity must be at least 1".into()));
    }
    check_cap(&predicted_forest_count(r, n), cap)?;
    let labels: Vec<usize> = (1..=n).collect();
    let mut forests: Vec<IncreasingForest> = forests_on(&labels, r)
        .into_iter()
        .map(|entries| {
            let mut parent = vec![None; n];
            for (v, p) in entries {
                parent[v - 1] = p;
            }
            IncreasingForest {
                arities: vec![r; n],
                parent,
            }
        })
        .collect();
    forests.sort();
    Ok(forests)
}

pub fn count_increasing_forests(r: u32, n: usize, cap: u64) -> Result<BigUint> {
    Ok(enumerate_increasing_forests(r, n, cap)?.len().into())
}

/// Cap value read from `BOSON_ORDER_ENUM_CAP`, if set and valid.
pub fn enum_cap_from_env() -> Option<u64> {
    std::env::var("BOSON_ORDER_ENUM_CAP")
        .ok()?
        .trim()
        .parse()
        .ok()
}
