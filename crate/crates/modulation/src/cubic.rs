use std::fmt;

use crate::ModeIndex;

/// One monomial of the cubic matching coefficient `a_{mj}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubicTerm {
    /// Sorted factors.
    pub factors: [ModeIndex; 3],
    /// Number of distinct orderings of the factors (1, 3 or 6).
    pub multiplicity: u32,
}

impl fmt::Display for CubicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.factors;
        write!(f, "{} {} {} {}", self.multiplicity, a, b, c)
    }
}

/// Monomials of `a_{mj}`, the coefficient of `r^{ord(m,j)} e^{imx}` in
/// `(Σ r^{α(m)+j} A_{mj} e^{imx})³` at truncation `N`.
///
/// Factors satisfy `m₁+m₂+m₃ = m` and `Σ (α(mᵢ)+jᵢ) = ord(m, j)`, where
/// `ord` is [`ModeIndex::matching_order`]. The list is sorted.
pub fn enumerate_cubic(m: i32, j: u32, big_n: u32) -> Vec<CubicTerm> {
    let target = ModeIndex::new(m, j);
    let order = target.matching_order();
    let all = ModeIndex::all(big_n);
    let mut out = Vec::new();
    for (a, fa) in all.iter().enumerate() {
        for (b, fb) in all.iter().enumerate().skip(a) {
            let partial = fa.level() + fb.level();
            if partial >= order {
                continue;
            }
            for fc in all.iter().skip(b) {
                if fa.m + fb.m + fc.m != m || partial + fc.level() != order {
                    continue;
                }
                let multiplicity = if fa == fb && fb == fc {
                    1
                } else if fa == fb || fb == fc {
                    3
                } else {
                    6
                };
                out.push(CubicTerm { factors: [*fa, *fb, *fc], multiplicity });
            }
        }
    }
    out.sort();
    out
}
