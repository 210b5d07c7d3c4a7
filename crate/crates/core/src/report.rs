//! Outcome and report types shared by all range sweeps.
//!
//! A sweep produces one [`BoundReport`] per partition; reports over
//! adjacent ranges merge associatively and commutatively (extrema ties
//! break toward the smaller x, outcome lists stay sorted), so partitioned
//! parallel sweeps are schedule-independent.

/// Margins within this distance of zero are boundary contact: the
/// inequality holds with exactly zero slack at that point, as opposed to
/// rounding noise on either side.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// The named inequality a [`CheckOutcome`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// `pi(x) log x / x > log 2`
    RatioLower,
    /// `pi(x) log x / x < 2 log 2`
    RatioUpper,
    /// `theta(x) <= psi(x)`
    ThetaLePsi,
    /// `psi(x) <= pi(x) log x`
    PsiLePiLog,
    /// `S(x) <= psi(x)`
    SLePsi,
    /// `S(x) / x > log(x/(x+2)) - (2/x) log(x+2) + log 2`
    SRatioLower,
    /// `2^(2n) / (2 sqrt n) < C(2n, n)`
    BinomialLower,
    /// `C(2n, n) < 2^(2n) / sqrt(2n + 1)`
    BinomialUpper,
    /// `theta(n) < 2n log 2`
    ThetaUpper,
    /// `floor(main - log^2 x / log log x) <= F(x)`
    GapLower,
    /// `F(x) <= floor(main + log^2 x * log log x)`
    GapUpper,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::RatioLower => "ratio_lower",
            CheckKind::RatioUpper => "ratio_upper",
            CheckKind::ThetaLePsi => "theta_le_psi",
            CheckKind::PsiLePiLog => "psi_le_pi_log_x",
            CheckKind::SLePsi => "s_le_psi",
            CheckKind::SRatioLower => "s_ratio_lower",
            CheckKind::BinomialLower => "binomial_lower",
            CheckKind::BinomialUpper => "binomial_upper",
            CheckKind::ThetaUpper => "theta_upper",
            CheckKind::GapLower => "gap_lower",
            CheckKind::GapUpper => "gap_upper",
        }
    }
}

/// Pass / boundary / violation, decided by the sign of the margin with the
/// boundary band in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeClass {
    Pass,
    Boundary,
    Violation,
}

impl OutcomeClass {
    pub fn name(self) -> &'static str {
        match self {
            OutcomeClass::Pass => "pass",
            OutcomeClass::Boundary => "boundary",
            OutcomeClass::Violation => "violation",
        }
    }
}

/// Classify a floating margin against [`BOUNDARY_TOLERANCE`].
pub fn classify(margin: f64) -> OutcomeClass {
    if margin.abs() <= BOUNDARY_TOLERANCE {
        OutcomeClass::Boundary
    } else if margin > 0.0 {
        OutcomeClass::Pass
    } else {
        OutcomeClass::Violation
    }
}

/// Classify an exact integer margin (no tolerance band needed).
pub fn classify_int(margin: i64) -> OutcomeClass {
    match margin.cmp(&0) {
        std::cmp::Ordering::Greater => OutcomeClass::Pass,
        std::cmp::Ordering::Equal => OutcomeClass::Boundary,
        std::cmp::Ordering::Less => OutcomeClass::Violation,
    }
}

/// One inequality evaluated at one point. Positive margin means satisfied
/// with slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub x: u64,
    pub margin: f64,
    pub class: OutcomeClass,
}

impl CheckOutcome {
    pub fn new(check: CheckKind, x: u64, margin: f64) -> Self {
        CheckOutcome {
            check,
            x,
            margin,
            class: classify(margin),
        }
    }

    pub fn new_int(check: CheckKind, x: u64, margin: i64) -> Self {
        CheckOutcome {
            check,
            x,
            margin: margin as f64,
            class: classify_int(margin),
        }
    }
}

/// Running extrema of a sweep's tracked statistic, with tie-break toward
/// the smaller x so merges commute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub min: f64,
    pub argmin_x: u64,
    pub max: f64,
    pub argmax_x: u64,
}

impl Extrema {
    pub fn at(x: u64, value: f64) -> Self {
        Extrema {
            min: value,
            argmin_x: x,
            max: value,
            argmax_x: x,
        }
    }

    pub fn observe(&mut self, x: u64, value: f64) {
        if value < self.min || (value == self.min && x < self.argmin_x) {
            self.min = value;
            self.argmin_x = x;
        }
        if value > self.max || (value == self.max && x < self.argmax_x) {
            self.max = value;
            self.argmax_x = x;
        }
    }

    pub fn merge(a: Extrema, b: Extrema) -> Extrema {
        let mut m = a;
        m.observe(b.argmin_x, b.min);
        m.observe(b.argmax_x, b.max);
        m
    }
}

/// Result of a range sweep: sample count, violation and boundary-contact
/// lists, and running extrema of the tracked statistic (the prime ratio
/// for ratio sweeps, the worst margin elsewhere).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lo: u64,
    pub hi: u64,
    pub samples_checked: u64,
    pub violations: Vec<CheckOutcome>,
    pub boundary_contacts: Vec<CheckOutcome>,
    pub extrema: Option<Extrema>,
}

impl BoundReport {
    pub fn empty(lo: u64, hi: u64) -> Self {
        BoundReport {
            lo,
            hi,
            samples_checked: 0,
            violations: Vec::new(),
            boundary_contacts: Vec::new(),
            extrema: None,
        }
    }

    /// Record one outcome into the violation or boundary list as its class
    /// dictates; passes are only counted.
    pub fn record(&mut self, outcome: CheckOutcome) {
        match outcome.class {
            OutcomeClass::Violation => self.violations.push(outcome),
            OutcomeClass::Boundary => self.boundary_contacts.push(outcome),
            OutcomeClass::Pass => {}
        }
    }

    pub fn observe(&mut self, x: u64, value: f64) {
        match &mut self.extrema {
            Some(e) => e.observe(x, value),
            None => self.extrema = Some(Extrema::at(x, value)),
        }
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    /// Combine reports over adjacent or disjoint ranges. Associative and
    /// commutative: outcome lists are kept sorted by (x, check) and the
    /// extrema tie-break is positional.
    pub fn merge(a: BoundReport, b: BoundReport) -> BoundReport {
        let extrema = match (a.extrema, b.extrema) {
            (Some(x), Some(y)) => Some(Extrema::merge(x, y)),
            (x, y) => x.or(y),
        };
        BoundReport {
            lo: a.lo.min(b.lo),
            hi: a.hi.max(b.hi),
            samples_checked: a.samples_checked + b.samples_checked,
            violations: merge_outcomes(a.violations, b.violations),
            boundary_contacts: merge_outcomes(a.boundary_contacts, b.boundary_contacts),
            extrema,
        }
    }
}

fn merge_outcomes(a: Vec<CheckOutcome>, b: Vec<CheckOutcome>) -> Vec<CheckOutcome> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (a.into_iter().peekable(), b.into_iter().peekable());
    loop {
        match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => {
                if (x.x, x.check) <= (y.x, y.check) {
                    out.push(ia.next().unwrap());
                } else {
                    out.push(ib.next().unwrap());
                }
            }
            (Some(_), None) => out.push(ia.next().unwrap()),
            (None, Some(_)) => out.push(ib.next().unwrap()),
            (None, None) => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_bands() {
        assert_eq!(classify(1e-3), OutcomeClass::Pass);
        assert_eq!(classify(1e-13), OutcomeClass::Boundary);
        assert_eq!(classify(0.0), OutcomeClass::Boundary);
        assert_eq!(classify(-1e-13), OutcomeClass::Boundary);
        assert_eq!(classify(-1e-3), OutcomeClass::Violation);
        assert_eq!(classify_int(1), OutcomeClass::Pass);
        assert_eq!(classify_int(0), OutcomeClass::Boundary);
        assert_eq!(classify_int(-1), OutcomeClass::Violation);
    }

    #[test]
    fn merge_is_commutative_and_keeps_order() {
        let mut a = BoundReport::empty(3, 10);
        a.samples_checked = 8;
        a.record(CheckOutcome::new(CheckKind::RatioLower, 4, 0.0));
        a.observe(4, 0.69);
        a.observe(7, 1.11);

        let mut b = BoundReport::empty(11, 20);
        b.samples_checked = 10;
        b.record(CheckOutcome::new(CheckKind::RatioUpper, 15, -0.5));
        b.observe(15, 0.25);
        b.observe(13, 1.2);

        let ab = BoundReport::merge(a.clone(), b.clone());
        let ba = BoundReport::merge(b, a);
        assert_eq!(ab, ba);
        assert_eq!(ab.lo, 3);
        assert_eq!(ab.hi, 20);
        assert_eq!(ab.samples_checked, 18);
        assert_eq!(ab.violations.len(), 1);
        assert_eq!(ab.boundary_contacts.len(), 1);
        let e = ab.extrema.unwrap();
        assert_eq!((e.argmin_x, e.argmax_x), (15, 13));
    }

    #[test]
    fn extrema_ties_take_smaller_x() {
        let mut e = Extrema::at(10, 1.0);
        e.observe(5, 1.0);
        assert_eq!(e.argmin_x, 5);
        assert_eq!(e.argmax_x, 5);
        e.observe(7, 1.0);
        assert_eq!(e.argmax_x, 5);
    }
}
