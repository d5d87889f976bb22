use clap::ValueEnum;

use cellproj::complex::GluedComplex;
use cellproj::quotient::{cpn_complex, cross_polytope_boundary, rpn_complex};
use cellproj::staircase::sphere_product;
use cellproj::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    SphereProduct,
    Cpn,
    Rpn,
    CrossPolytope,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::SphereProduct => "sphere-product",
            Target::Cpn => "cpn",
            Target::Rpn => "rpn",
            Target::CrossPolytope => "cross-polytope",
        }
    }

    pub fn label(self, n: usize) -> String {
        match self {
            Target::SphereProduct => format!("X^{n}"),
            Target::Cpn => format!("T_{n}"),
            Target::Rpn => format!("RP^{n}"),
            Target::CrossPolytope => format!("cross-polytope boundary S^{n}"),
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            Target::SphereProduct | Target::Cpn => 4,
            Target::Rpn | Target::CrossPolytope => 8,
        }
    }

    pub fn check_bounds(self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_n() {
            return Err(Error::CapacityExceeded(format!(
                "{} supports n in 1..={}, got {n}",
                self.name(),
                self.max_n()
            )));
        }
        Ok(())
    }

    pub fn build(self, n: usize) -> Result<GluedComplex> {
        self.check_bounds(n)?;
        Ok(match self {
            Target::SphereProduct => sphere_product(n)?.into_complex(),
            Target::Cpn => cpn_complex(n)?.into_complex(),
            Target::Rpn => rpn_complex(n)?.into_complex(),
            Target::CrossPolytope => cross_polytope_boundary(n)?,
        })
    }

    /// Expected face counts.
    pub fn f_vector(self, n: usize) -> Option<Vec<u64>> {
        match self {
            Target::SphereProduct => cellproj::reference::sphere_product_f(n).map(<[u64]>::to_vec),
            Target::Cpn => cellproj::reference::cpn_f(n).map(<[u64]>::to_vec),
            // 2^(k+1) C(n+1, k+1) faces of dimension k, halved by the free involution
            Target::CrossPolytope | Target::Rpn => {
                let shift = u32::from(self == Target::CrossPolytope);
                Some(
                    (0..=n)
                        .map(|k| binomial(n + 1, k + 1) << (k as u32 + shift))
                        .collect(),
                )
            }
        }
    }

    pub fn euler_characteristic(self, n: usize) -> i64 {
        match self {
            Target::SphereProduct => 1 << n,
            Target::Cpn => n as i64 + 1,
            Target::Rpn => i64::from(n.is_multiple_of(2)),
            Target::CrossPolytope => 1 + if n.is_multiple_of(2) { 1 } else { -1 },
        }
    }

    /// Expected Betti numbers and torsion per degree.
    pub fn homology(self, n: usize) -> (Vec<u64>, Vec<Vec<u64>>) {
        let d = self.dim(n);
        let mut torsion = vec![Vec::new(); d + 1];
        let betti = match self {
            Target::SphereProduct => cellproj::reference::sphere_product_betti(n),
            Target::Cpn => cellproj::reference::cpn_betti(n),
            Target::CrossPolytope => (0..=n).map(|k| u64::from(k == 0 || k == n)).collect(),
            Target::Rpn => {
                for (k, t) in torsion.iter_mut().enumerate().take(n).skip(1) {
                    if k % 2 == 1 {
                        t.push(2);
                    }
                }
                (0..=n)
                    .map(|k| u64::from(k == 0 || (k == n && n % 2 == 1)))
                    .collect()
            }
        };
        (betti, torsion)
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            Target::SphereProduct | Target::Cpn => 2 * n,
            Target::Rpn | Target::CrossPolytope => n,
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
