/// Precision knobs shared by every operation that has to cut an infinite
/// expansion short.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    /// Number of terms kept from an inherently infinite series (Taylor,
    /// geometric, Mercator).
    pub series_order: usize,
    /// Number of tail-family members expanded when a tail is forced into a
    /// multiplicative position or a path enumeration.
    pub tail_expand: usize,
    /// Largest `alpha` tried when searching `kappa_{-alpha}` for asymptotic
    /// integration.
    pub kappa_depth: u32,
    /// Maximum number of asymptotic-integral steps in `integrate`.
    pub fuel: usize,
}

impl PrecisionContext {
    pub const fn new(series_order: usize, tail_expand: usize, kappa_depth: u32, fuel: usize) -> Self {
        PrecisionContext {
            series_order,
            tail_expand,
            kappa_depth,
            fuel,
        }
    }

    pub fn with_series_order(mut self, n: usize) -> Self {
        self.series_order = n.max(1);
        self
    }

    pub fn with_tail_expand(mut self, t: usize) -> Self {
        self.tail_expand = t.max(1);
        self
    }

    pub fn with_kappa_depth(mut self, a: u32) -> Self {
        self.kappa_depth = a;
        self
    }

    pub fn with_fuel(mut self, f: usize) -> Self {
        self.fuel = f.max(1);
        self
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(12, 12, 4, 64)
    }
}
