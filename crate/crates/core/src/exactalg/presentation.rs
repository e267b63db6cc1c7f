use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{check_composable, smith_normal_form, AlgebraError, HomologyGroup, IntMatrix};

/// Explicit generators for `ker d_n / im d_{n+1}` together with the linear
/// map taking a cycle to its coordinates in those generators.
///
/// Generators are ordered torsion first (by increasing order) then free, so
/// they line up with [`HomologyGroup`]'s display order.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub group: HomologyGroup,
    /// Chain vectors, one per generator.
    pub generators: Vec<Vec<BigInt>>,
    /// `Some(d)` for a generator of order `d`, `None` for a free one.
    pub orders: Vec<Option<BigInt>>,
    /// `generators.len() × chain_rank` matrix sending cycles to coordinates.
    coordinates: IntMatrix,
}

impl HomologyPresentation {
    pub fn compute(d_n: &IntMatrix, d_next: &IntMatrix) -> Result<Self, AlgebraError> {
        let basis_size = d_n.cols();
        check_composable(d_n, d_next, basis_size)?;

        let outer = smith_normal_form(d_n, true);
        let r = outer.rank;
        let v = outer.v.as_ref().expect("transforms requested");
        let v_inv = outer.v_inv.as_ref().expect("transforms requested");
        let z = basis_size - r;
        let kernel_rows: Vec<usize> = (r..basis_size).collect();
        let all_cols: Vec<usize> = (0..basis_size).collect();
        // columns r.. of v span ker d_n; rows r.. of v_inv give coordinates in it
        let kernel = v.select(&all_cols, &kernel_rows);
        let to_kernel = v_inv.select(&kernel_rows, &all_cols);

        let boundaries = &to_kernel * d_next;
        debug_assert!(
            (&v_inv.select(&(0..r).collect::<Vec<_>>(), &all_cols) * d_next).is_zero(),
            "boundaries must lie in the kernel"
        );
        let inner = smith_normal_form(&boundaries, true);
        let p = inner.u.as_ref().expect("transforms requested");
        let p_inv = inner.u_inv.as_ref().expect("transforms requested");
        let factors = inner.invariant_factors();

        let gens_in_kernel = &kernel * p_inv;
        let coords_all = p * &to_kernel;

        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..z {
            match factors.get(i) {
                Some(d) if d.is_one() => continue,
                Some(d) => orders.push(Some(d.clone())),
                None => orders.push(None),
            }
            keep.push(i);
        }
        let generators = keep.iter().map(|&i| gens_in_kernel.column(i)).collect();
        let coordinates = coords_all.select(&keep, &all_cols);
        let group = HomologyGroup {
            rank: z - factors.len(),
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        };
        Ok(HomologyPresentation {
            group,
            generators,
            orders,
            coordinates,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Coordinates of a cycle in the generator basis, torsion entries reduced
    /// into `0..d`.
    pub fn coordinates_of(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.coordinates.mul_vec(cycle);
        self.reduce(&mut c);
        c
    }

    pub fn reduce(&self, coords: &mut [BigInt]) {
        for (x, order) in coords.iter_mut().zip(&self.orders) {
            if let Some(d) = order {
                *x = x.mod_floor(d);
            }
        }
    }

    /// Reduces each row of a map matrix landing in this group.
    pub fn reduce_matrix(&self, m: &mut IntMatrix) {
        for (i, order) in self.orders.iter().enumerate() {
            if let Some(d) = order {
                for j in 0..m.cols() {
                    let x = m[(i, j)].mod_floor(d);
                    m[(i, j)] = x;
                }
            }
        }
    }

    /// True when `chain` is a boundary, i.e. has zero class.
    pub fn is_null(&self, cycle: &[BigInt]) -> bool {
        self.coordinates_of(cycle).iter().all(Zero::is_zero)
    }
}
