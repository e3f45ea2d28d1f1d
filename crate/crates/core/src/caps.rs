//! Resource caps for the combinatorial searches.

/// Limits honoured by point enumeration, closure and model-space builders.
/// All searches that can blow up take one of these and fail with a capped
/// error instead of running away.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Admissible points per presentation.
    pub max_points: usize,
    /// Search nodes visited while enumerating points.
    pub max_nodes: u64,
    /// Elements in a realized lattice or generated algebra.
    pub max_elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_points: 1 << 20,
            max_nodes: 1 << 26,
            max_elements: 1 << 20,
        }
    }
}

impl Caps {
    pub fn with_max_points(mut self, n: usize) -> Self {
        self.max_points = n;
        self
    }

    pub fn with_max_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    pub fn with_max_elements(mut self, n: usize) -> Self {
        self.max_elements = n;
        self
    }
}
