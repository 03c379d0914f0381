//! Complexity classification of the 32 meaningful criterion combinations.
//!
//! Each cell records the result it follows from: either a direct
//! construction (polynomial algorithm or hardness reduction) or one of the
//! monotonicity arguments that lift a result to a neighbouring variant.

use std::fmt;

use crate::error::Result;
use crate::model::variant::VariantSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Complexity {
    PolynomialTime,
    NpHard,
}

impl Complexity {
    pub fn short(self) -> &'static str {
        match self {
            Complexity::PolynomialTime => "P",
            Complexity::NpHard => "NP-hard",
        }
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// A result used in a derivation chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Argument {
    /// Without I and N the linearised model is a linear program.
    LinearProgram,
    /// Nearest-center assignment is optimal and contiguous.
    GreedyNearestCenter,
    /// Relaxation plus rounding-graph elimination keeps optimality.
    FractionalRounding,
    /// All edges in one district is feasible without B and O.
    SingleDistrict,
    /// Smallest p with adjacent-only allocation equals a minimum vertex cover.
    VertexCoverReduction,
    /// Spider graphs / weighted stars encode 3-Partition.
    ThreePartitionReduction,
    /// Adding B never makes a problem with N easier.
    BalanceNoEasier,
    /// An optimal solution certifies feasibility.
    ObjectiveNoEasier,
    /// Unit weights are a special case of arbitrary weights.
    WeightsNoEasier,
}

impl Argument {
    pub fn label(self) -> &'static str {
        match self {
            Argument::LinearProgram => "linear-program",
            Argument::GreedyNearestCenter => "greedy-nearest-center",
            Argument::FractionalRounding => "fractional-rounding",
            Argument::SingleDistrict => "single-district",
            Argument::VertexCoverReduction => "vertex-cover-reduction",
            Argument::ThreePartitionReduction => "3-partition-reduction",
            Argument::BalanceNoEasier => "balance-no-easier",
            Argument::ObjectiveNoEasier => "objective-no-easier",
            Argument::WeightsNoEasier => "weights-no-easier",
        }
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

const MULTIPLICATIVE_CAVEAT: &str =
    "the balance lifting step is shown for additive tolerance; for multiplicative tolerance it is open";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub variant: VariantSpec,
    pub complexity: Complexity,
    pub arguments: Vec<Argument>,
    pub caveat: Option<&'static str>,
}

impl Classification {
    /// Arguments joined with `&`, followed by the caveat when present.
    pub fn derivation(&self) -> String {
        let chain = self.arguments.iter().map(|a| a.label()).collect::<Vec<_>>().join(" & ");
        match self.caveat {
            Some(caveat) => format!("{chain} ({caveat})"),
            None => chain,
        }
    }
}

use Argument::*;
use Complexity::{NpHard as H, PolynomialTime as P};

type Cell = (Complexity, &'static [Argument]);

// Rows by (B, N, W): -, W, B, BW, N, NW, BN, BNW.
// Columns by (C, I, O): O, IO, IC, CIO.
const TABLE: [[Cell; 4]; 8] = [
    [
        (P, &[LinearProgram]),
        (P, &[GreedyNearestCenter, WeightsNoEasier]),
        (P, &[GreedyNearestCenter, WeightsNoEasier, ObjectiveNoEasier]),
        (P, &[GreedyNearestCenter, WeightsNoEasier]),
    ],
    [
        (P, &[LinearProgram]),
        (P, &[GreedyNearestCenter]),
        (P, &[GreedyNearestCenter, ObjectiveNoEasier]),
        (P, &[GreedyNearestCenter]),
    ],
    [
        (P, &[LinearProgram]),
        (P, &[FractionalRounding]),
        (H, &[ThreePartitionReduction]),
        (H, &[ThreePartitionReduction, ObjectiveNoEasier]),
    ],
    [
        (P, &[LinearProgram]),
        (H, &[ThreePartitionReduction]),
        (H, &[ThreePartitionReduction, WeightsNoEasier]),
        (H, &[ThreePartitionReduction, ObjectiveNoEasier]),
    ],
    [
        (H, &[VertexCoverReduction]),
        (H, &[VertexCoverReduction]),
        (P, &[SingleDistrict, WeightsNoEasier]),
        (H, &[VertexCoverReduction]),
    ],
    [
        (H, &[VertexCoverReduction, WeightsNoEasier]),
        (H, &[VertexCoverReduction, WeightsNoEasier]),
        (P, &[SingleDistrict]),
        (H, &[VertexCoverReduction, WeightsNoEasier]),
    ],
    [
        (H, &[VertexCoverReduction, BalanceNoEasier]),
        (H, &[VertexCoverReduction, BalanceNoEasier]),
        (H, &[ThreePartitionReduction]),
        (H, &[ThreePartitionReduction, ObjectiveNoEasier]),
    ],
    [
        (H, &[VertexCoverReduction, WeightsNoEasier, BalanceNoEasier]),
        (H, &[VertexCoverReduction, WeightsNoEasier, BalanceNoEasier]),
        (H, &[ThreePartitionReduction, WeightsNoEasier]),
        (H, &[ThreePartitionReduction, ObjectiveNoEasier, WeightsNoEasier]),
    ],
];

/// Looks up the complexity of a meaningful variant together with the chain
/// of results it follows from.
pub fn classify(variant: VariantSpec) -> Result<Classification> {
    variant.check_meaningful()?;
    let row = match (variant.balance(), variant.node_selection(), variant.weighted()) {
        (false, false, false) => 0,
        (false, false, true) => 1,
        (true, false, false) => 2,
        (true, false, true) => 3,
        (false, true, false) => 4,
        (false, true, true) => 5,
        (true, true, false) => 6,
        (true, true, true) => 7,
    };
    let column = match (variant.contiguity(), variant.integrity(), variant.objective()) {
        (false, false, true) => 0,
        (false, true, true) => 1,
        (true, true, false) => 2,
        (true, true, true) => 3,
        _ => unreachable!("meaningfulness excludes the remaining (C, I, O) patterns"),
    };
    let (complexity, arguments) = TABLE[row][column];
    let caveat = arguments.contains(&BalanceNoEasier).then_some(MULTIPLICATIVE_CAVEAT);
    Ok(Classification { variant, complexity, arguments: arguments.to_vec(), caveat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn class(s: &str) -> Complexity {
        classify(s.parse().unwrap()).unwrap().complexity
    }

    #[test]
    fn spot_checks() {
        assert_eq!(class("IOW"), Complexity::PolynomialTime);
        assert_eq!(class("BIOW"), Complexity::NpHard);
        assert_eq!(class("CINW"), Complexity::PolynomialTime);
        assert_eq!(class("BIO"), Complexity::PolynomialTime);
        assert_eq!(class("NO"), Complexity::NpHard);
    }

    #[test]
    fn derivation_chains() {
        let c = classify("IO".parse().unwrap()).unwrap();
        assert_eq!(c.derivation(), "greedy-nearest-center & weights-no-easier");
        let c = classify("BINO".parse().unwrap()).unwrap();
        assert!(c.derivation().contains("multiplicative"));
    }

    #[test]
    fn meaningless_variants_error() {
        assert!(matches!(
            classify("CO".parse().unwrap()),
            Err(Error::MeaninglessVariant { .. })
        ));
        assert!(classify("BIN".parse().unwrap()).is_err());
    }

    #[test]
    fn total_over_meaningful_variants() {
        assert_eq!(VariantSpec::meaningful().filter(|&v| classify(v).is_ok()).count(), 32);
        assert_eq!(VariantSpec::all().filter(|&v| classify(v).is_ok()).count(), 32);
    }
}
