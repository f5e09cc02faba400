//! Built-in reference banks.
//!
//! Two families of rational banks, genus 2 and genus 3, each at three
//! approximation levels, together with the float prototypes they track.
//! These are the regression targets for the exact pipeline and the data
//! behind the `tables` command.

use crate::bank::WaveletBank2;
use crate::param::PhiParam;
use crate::scalar::{rat, Rat};

/// One rational bank: its parameter, its lowpass taps, and the moment
/// values it is documented with (decimal strings at source precision).
pub struct RefColumn {
    pub label: &'static str,
    /// Parameter coefficients gamma_1..gamma_n as (numer, denom).
    pub phi: &'static [(i64, i64)],
    /// Lowpass taps h0[0..2g) as (numer, denom).
    pub h0: &'static [(i64, i64)],
    /// Documented decimal approximations of M_1..M_{g-1}.
    pub printed_moments: &'static [&'static str],
}

/// A float prototype bank and its rational approximations.
pub struct RefTable {
    pub genus: usize,
    /// Lowpass taps of the float prototype at 15 significant digits.
    pub float_h0: &'static [f64],
    pub columns: &'static [RefColumn],
}

pub const GENUS2: RefTable = RefTable {
    genus: 2,
    float_h0: &[
        0.683012701892219,
        1.18301270189222,
        0.316987298107781,
        -0.183012701892219,
    ],
    columns: &[
        RefColumn {
            label: "den:4",
            phi: &[(-1, 4)],
            h0: &[(12, 17), (20, 17), (5, 17), (-3, 17)],
            printed_moments: &["0.59"],
        },
        RefColumn {
            label: "den:64",
            phi: &[(-17, 64)],
            h0: &[(3008, 4385), (5184, 4385), (1377, 4385), (-799, 4385)],
            printed_moments: &["0.008"],
        },
        RefColumn {
            label: "den:512",
            phi: &[(-137, 512)],
            h0: &[
                (192000, 280913),
                (332288, 280913),
                (88913, 280913),
                (-51375, 280913),
            ],
            printed_moments: &["0.001"],
        },
    ],
};

pub const GENUS3: RefTable = RefTable {
    genus: 3,
    float_h0: &[
        0.470467207784164,
        1.14111691583144,
        0.650365000526232,
        -0.190934415568327,
        -0.120832208310396,
        0.0498174997368838,
    ],
    columns: &[
        RefColumn {
            label: "den:8",
            phi: &[(-1, 2), (1, 8)],
            h0: &[
                (2888, 5249),
                (5944, 5249),
                (3104, 5249),
                (-1056, 5249),
                (-743, 5249),
                (361, 5249),
            ],
            printed_moments: &["0.256", "1.622"],
        },
        RefColumn {
            label: "den:64",
            phi: &[(-35, 64), (7, 64)],
            h0: &[
                (2132672, 4439725),
                (5059904, 4439725),
                (572096, 887945),
                (-170688, 887945),
                (-553427, 4439725),
                (233261, 4439725),
            ],
            printed_moments: &["0.0357", "0.2169"],
        },
        RefColumn {
            label: "den:512",
            phi: &[(-283, 512), (27, 256)],
            h0: &[
                (2677170944, 5703228401),
                (6509075712, 5703228401),
                (3712561536, 5703228401),
                (-1088205184, 5703228401),
                (-686504079, 5703228401),
                (282357873, 5703228401),
            ],
            printed_moments: &["-0.0040", "-0.0239"],
        },
    ],
};

pub fn tables() -> [&'static RefTable; 2] {
    [&GENUS2, &GENUS3]
}

impl RefColumn {
    pub fn phi_param(&self) -> PhiParam<Rat> {
        let gammas: Vec<Rat> = self.phi.iter().map(|&(p, q)| rat(p, q)).collect();
        PhiParam::new(self.phi.len(), gammas).expect("reference parameter is well formed")
    }

    pub fn bank(&self) -> WaveletBank2<Rat> {
        let taps: Vec<Rat> = self.h0.iter().map(|&(p, q)| rat(p, q)).collect();
        WaveletBank2::from_h0(taps).expect("reference taps are well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::phi_to_pair;

    #[test]
    fn reference_banks_are_exactly_paraunitary() {
        for table in tables() {
            for col in table.columns {
                let bank = col.bank();
                assert_eq!(bank.genus(), table.genus, "{}", col.label);
                assert!(
                    bank.check_quadratic().is_exact_zero(),
                    "column {} of genus {}",
                    col.label,
                    table.genus
                );
            }
        }
    }

    #[test]
    fn reference_parameters_synthesize_the_reference_taps() {
        for table in tables() {
            for col in table.columns {
                let pair = phi_to_pair(&col.phi_param()).unwrap();
                let bank = WaveletBank2::from_param(&pair, table.genus).unwrap();
                assert_eq!(bank.h0(), col.bank().h0(), "column {}", col.label);
            }
        }
    }

    #[test]
    fn float_prototypes_match_generated_banks() {
        for table in tables() {
            let gen = crate::daubechies::generate(table.genus).unwrap();
            for (a, b) in gen.h0().iter().zip(table.float_h0) {
                assert!((a - b).abs() < 1e-12, "genus {}", table.genus);
            }
        }
    }
}
