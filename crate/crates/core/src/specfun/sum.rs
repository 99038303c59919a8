use crate::Real;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CompensatedSum<F> {
    sum: F,
    comp: F,
}

impl<F: Real> CompensatedSum<F> {
    pub(crate) fn new() -> Self {
        Self { sum: F::zero(), comp: F::zero() }
    }

    #[inline]
    pub(crate) fn add(&mut self, x: F) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> F {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_term() {
        let mut s = CompensatedSum::<f64>::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }
}
