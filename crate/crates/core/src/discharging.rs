//! Charges on vertices and faces, the four redistribution rules and the
//! audit of the resulting bounds. All arithmetic is exact.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::plane::{BoundarySet, FaceId, PlaneGraph, Vertex};

pub type Charge = Rational64;

/// Sum of all charges of a connected plane graph.
pub const TOTAL: i64 = -12;

fn half() -> Charge {
    Charge::new(1, 2)
}

fn int(n: i64) -> Charge {
    Charge::from_integer(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(Vertex),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(id) => write!(f, "f{id}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub source: Element,
    pub sink: Element,
    pub amount: Charge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Initial,
    Final,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DischargeError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph has no outer face")]
    NoOuterFace,
    #[error("rules need an initial ledger")]
    NotInitial,
    #[error("ledger does not match the graph")]
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeLedger {
    stage: Stage,
    vertices: Vec<Charge>,
    faces: Vec<Charge>,
    log: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn vertex(&self, v: Vertex) -> Charge {
        self.vertices[v - 1]
    }

    pub fn face(&self, id: FaceId) -> Charge {
        self.faces[id]
    }

    pub fn vertex_charges(&self) -> &[Charge] {
        &self.vertices
    }

    pub fn face_charges(&self) -> &[Charge] {
        &self.faces
    }

    pub fn log(&self) -> &[Transfer] {
        &self.log
    }

    pub fn total(&self) -> Charge {
        self.vertices.iter().chain(&self.faces).sum()
    }

    pub fn get(&self, e: Element) -> Charge {
        match e {
            Element::Vertex(v) => self.vertex(v),
            Element::Face(id) => self.face(id),
        }
    }

    fn slot(&mut self, e: Element) -> &mut Charge {
        match e {
            Element::Vertex(v) => &mut self.vertices[v - 1],
            Element::Face(id) => &mut self.faces[id],
        }
    }

    fn apply(&mut self, t: Transfer) {
        *self.slot(t.source) -= t.amount;
        *self.slot(t.sink) += t.amount;
    }

    fn push(&mut self, t: Transfer) {
        self.apply(t);
        self.log.push(t);
    }

    /// Replays `log` on a copy of `self`, returning the total after each
    /// transfer.
    pub fn replay(&self, log: &[Transfer]) -> (ChargeLedger, Vec<Charge>) {
        let mut l = ChargeLedger {
            stage: self.stage,
            vertices: self.vertices.clone(),
            faces: self.faces.clone(),
            log: Vec::new(),
        };
        let mut totals = Vec::with_capacity(log.len());
        for &t in log {
            l.push(t);
            totals.push(l.total());
        }
        l.stage = Stage::Final;
        (l, totals)
    }
}

/// `2 deg(v) - 6` on vertices and `|f| - 6` on faces.
pub fn initial_charges(g: &PlaneGraph) -> Result<ChargeLedger, DischargeError> {
    if g.edge_count() == 0 {
        return Err(DischargeError::NoEdges);
    }
    if !g.is_connected() {
        return Err(DischargeError::Disconnected);
    }
    Ok(ChargeLedger {
        stage: Stage::Initial,
        vertices: g.vertices().map(|v| int(2 * g.degree(v) as i64 - 6)).collect(),
        faces: g.faces().iter().map(|f| int(f.len() as i64 - 6)).collect(),
        log: Vec::new(),
    })
}

/// Rule switches; the default is the standard rule set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RuleOptions {
    /// Let the outer face send under R2 as well.
    pub r2_from_outer: bool,
}

pub fn apply_rules(g: &PlaneGraph, s: &BoundarySet, ledger: &ChargeLedger) -> Result<ChargeLedger, DischargeError> {
    apply_rules_with(g, s, ledger, RuleOptions::default())
}

pub fn apply_rules_with(
    g: &PlaneGraph,
    s: &BoundarySet,
    ledger: &ChargeLedger,
    opts: RuleOptions,
) -> Result<ChargeLedger, DischargeError> {
    if ledger.stage != Stage::Initial {
        return Err(DischargeError::NotInitial);
    }
    if ledger.vertices.len() != g.n() || ledger.faces.len() != g.faces().len() {
        return Err(DischargeError::Mismatch);
    }
    let outer = g.outer_face().ok_or(DischargeError::NoOuterFace)?;
    let mut l = ledger.clone();
    for (id, f) in g.faces().iter().enumerate() {
        if id != outer && f.len() == 3 {
            for &v in f.boundary() {
                l.push(Transfer {
                    rule: Rule::R1,
                    source: Element::Vertex(v),
                    sink: Element::Face(id),
                    amount: int(1),
                });
            }
        }
    }
    for (id, f) in g.faces().iter().enumerate() {
        if (id == outer && !opts.r2_from_outer) || f.len() < 9 {
            continue;
        }
        for v in f.vertex_set() {
            if !s.contains(v) && g.degree(v) == 3 && in_triangle(g, v) {
                l.push(Transfer {
                    rule: Rule::R2,
                    source: Element::Face(id),
                    sink: Element::Vertex(v),
                    amount: half(),
                });
            }
        }
    }
    for v in g.vertices() {
        for id in r3_faces(g, v) {
            if id != outer {
                l.push(Transfer {
                    rule: Rule::R3,
                    source: Element::Vertex(v),
                    sink: Element::Face(id),
                    amount: half(),
                });
            }
        }
    }
    for v in g.vertices() {
        if !s.contains(v) || g.degree(v) != 2 {
            continue;
        }
        if let Some(id) = g.faces_at(v).into_iter().filter(|&id| id != outer).min() {
            l.push(Transfer {
                rule: Rule::R4,
                source: Element::Face(id),
                sink: Element::Vertex(v),
                amount: half(),
            });
        }
    }
    l.stage = Stage::Final;
    Ok(l)
}

fn in_triangle(g: &PlaneGraph, v: Vertex) -> bool {
    g.rotation(v).iter().any(|&u| g.edge_in_triangle(u, v))
}

/// Faces receiving 1/2 from `v` under R3, in increasing id order: for each
/// four consecutive neighbours `a b c d` in either rotation direction with
/// `ab` an edge and `cd` not, the face at the corner between `b` and `c`.
pub fn r3_faces(g: &PlaneGraph, v: Vertex) -> BTreeSet<FaceId> {
    let rot = g.rotation(v);
    let d = rot.len();
    let mut out = BTreeSet::new();
    if d < 4 {
        return out;
    }
    for i in 0..d {
        let w = |j: usize| rot[(i + j) % d];
        // Clockwise window a b c d: the corner from b to c.
        if g.has_edge(w(0), w(1)) && !g.has_edge(w(2), w(3)) {
            out.insert(g.face_of_dart(w(1), v).expect("edge"));
        }
        // Counter-clockwise window d c b a read backwards: the corner from c
        // to b.
        if g.has_edge(w(3), w(2)) && !g.has_edge(w(1), w(0)) {
            out.insert(g.face_of_dart(w(1), v).expect("edge"));
        }
    }
    out
}

/// The lower bound on the final charge of `v`.
pub fn vertex_bound(g: &PlaneGraph, s: &BoundarySet, v: Vertex) -> Charge {
    let d = g.degree(v);
    if !s.contains(v) || d >= 4 {
        int(0)
    } else if d == 3 {
        int(-1)
    } else {
        Charge::new(-3, 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditIssue {
    VertexBelowBound {
        vertex: Vertex,
        charge: Charge,
        bound: Charge,
    },
    NegativeFace {
        face: FaceId,
        charge: Charge,
    },
    Overspent {
        vertex: Vertex,
        spent: Charge,
        cap: Charge,
    },
    Conservation {
        after: usize,
        total: Charge,
    },
    ReplayMismatch,
}

impl fmt::Display for AuditIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditIssue::VertexBelowBound { vertex, charge, bound } => {
                write!(f, "vertex {vertex} has charge {charge} below {bound}")
            }
            AuditIssue::NegativeFace { face, charge } => write!(f, "face {face} has charge {charge}"),
            AuditIssue::Overspent { vertex, spent, cap } => write!(f, "vertex {vertex} sends {spent}, more than {cap}"),
            AuditIssue::Conservation { after, total } => write!(f, "total is {total} after transfer {after}"),
            AuditIssue::ReplayMismatch => write!(f, "replaying the log does not give the final charges"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub total: Charge,
    pub issues: Vec<AuditIssue>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn vertex_violations(&self) -> impl Iterator<Item = &AuditIssue> {
        self.issues
            .iter()
            .filter(|i| matches!(i, AuditIssue::VertexBelowBound { .. }))
    }

    pub fn face_violations(&self) -> impl Iterator<Item = &AuditIssue> {
        self.issues
            .iter()
            .filter(|i| matches!(i, AuditIssue::NegativeFace { .. }))
    }

    /// Issues that mean the bookkeeping itself is wrong, as opposed to
    /// bounds an instance may legitimately miss.
    pub fn bookkeeping_errors(&self) -> impl Iterator<Item = &AuditIssue> {
        self.issues
            .iter()
            .filter(|i| matches!(i, AuditIssue::Conservation { .. } | AuditIssue::ReplayMismatch))
    }
}

/// Checks the vertex bounds, non-negativity of non-outer faces, the R1 + R3
/// spending cap of `3/4 deg(v)`, conservation after every transfer and that
/// the log reproduces the final charges.
pub fn audit(g: &PlaneGraph, s: &BoundarySet, ledger: &ChargeLedger) -> Result<AuditReport, DischargeError> {
    let initial = initial_charges(g)?;
    if ledger.vertices.len() != g.n() || ledger.faces.len() != g.faces().len() {
        return Err(DischargeError::Mismatch);
    }
    let mut issues = Vec::new();
    let (replayed, totals) = initial.replay(&ledger.log);
    for (i, t) in totals.iter().enumerate() {
        if *t != int(TOTAL) {
            issues.push(AuditIssue::Conservation { after: i, total: *t });
        }
    }
    if replayed.vertices != ledger.vertices || replayed.faces != ledger.faces {
        issues.push(AuditIssue::ReplayMismatch);
    }
    for v in g.vertices() {
        let bound = vertex_bound(g, s, v);
        if ledger.vertex(v) < bound {
            issues.push(AuditIssue::VertexBelowBound {
                vertex: v,
                charge: ledger.vertex(v),
                bound,
            });
        }
    }
    let outer = g.outer_face();
    for id in 0..g.faces().len() {
        if Some(id) != outer && ledger.face(id) < int(0) {
            issues.push(AuditIssue::NegativeFace {
                face: id,
                charge: ledger.face(id),
            });
        }
    }
    let mut spent = vec![int(0); g.n() + 1];
    for t in &ledger.log {
        if let (Rule::R1 | Rule::R3, Element::Vertex(v)) = (t.rule, t.source) {
            spent[v] += t.amount;
        }
    }
    for v in g.vertices() {
        let cap = Charge::new(3 * g.degree(v) as i64, 4);
        if spent[v] > cap {
            issues.push(AuditIssue::Overspent {
                vertex: v,
                spent: spent[v],
                cap,
            });
        }
    }
    Ok(AuditReport {
        total: ledger.total(),
        issues,
    })
}

/// Initial charges, rules and audit in one go.
pub fn discharge(g: &PlaneGraph, s: &BoundarySet) -> Result<(ChargeLedger, AuditReport), DischargeError> {
    let initial = initial_charges(g)?;
    let fin = apply_rules(g, s, &initial)?;
    let report = audit(g, s, &fin)?;
    Ok((fin, report))
}

/// Whether letting the outer face send under R2 changes which vertices or
/// faces violate their bounds.
pub fn r2_outer_changes_verdict(g: &PlaneGraph, s: &BoundarySet) -> Result<bool, DischargeError> {
    let initial = initial_charges(g)?;
    let verdict = |opts| -> Result<Vec<AuditIssue>, DischargeError> {
        let fin = apply_rules_with(g, s, &initial, opts)?;
        let r = audit(g, s, &fin)?;
        Ok(r.vertex_violations()
            .chain(r.face_violations())
            .map(strip_charge)
            .collect())
    };
    Ok(verdict(RuleOptions::default())? != verdict(RuleOptions { r2_from_outer: true })?)
}

fn strip_charge(i: &AuditIssue) -> AuditIssue {
    match i {
        AuditIssue::VertexBelowBound { vertex, bound, .. } => AuditIssue::VertexBelowBound {
            vertex: *vertex,
            charge: int(0),
            bound: *bound,
        },
        AuditIssue::NegativeFace { face, .. } => AuditIssue::NegativeFace {
            face: *face,
            charge: int(0),
        },
        other => other.clone(),
    }
}
