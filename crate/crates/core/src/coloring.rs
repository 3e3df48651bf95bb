//! Partial and total colourings, and the validity check against an
//! assignment.

use crate::correspondence::{Color, CorrespondenceAssignment};
use crate::plane::{Edge, Vertex};

/// Map from vertices `1..=n` to colours; uncoloured vertices are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring { colors: vec![None; n] }
    }

    pub fn total(colors: &[Color]) -> Self {
        Coloring {
            colors: colors.iter().map(|&c| Some(c)).collect(),
        }
    }

    pub fn from_options(colors: Vec<Option<Color>>) -> Self {
        Coloring { colors }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v.wrapping_sub(1)).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.colors[v - 1] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        self.colors[v - 1] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Coloured vertices in increasing order.
    pub fn domain(&self) -> Vec<Vertex> {
        (1..=self.colors.len())
            .filter(|&v| self.colors[v - 1].is_some())
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (i + 1, c)))
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// Whether `self` agrees with `other` on all vertices `other` colours.
    pub fn extends(&self, other: &Coloring) -> bool {
        other.iter().all(|(v, c)| self.get(v) == Some(c))
    }
}

/// First edge whose two coloured ends clash: `C_uv(f(u)) = f(v)`.
pub fn conflict(c: &CorrespondenceAssignment, f: &Coloring) -> Option<Edge> {
    c.iter().map(|(e, _)| e).find(|&e| match (f.get(e.u()), f.get(e.v())) {
        (Some(a), Some(b)) => c.apply(e.u(), e.v(), a) == Some(b),
        _ => false,
    })
}

/// Colours in range and no edge with both ends coloured in conflict.
pub fn is_valid(c: &CorrespondenceAssignment, f: &Coloring) -> bool {
    f.iter().all(|(_, col)| col >= 1 && col <= c.k()) && conflict(c, f).is_none()
}
