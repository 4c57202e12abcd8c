//! Flat storage for a truncated power series with nonnegative big-integer
//! coefficients.
//!
//! Every coefficient occupies `width` little-endian `u64` limbs in one
//! contiguous buffer. `used[i]` is an upper bound on the number of nonzero
//! limbs of row `i`, which keeps additions of small rows cheap. The width
//! grows when a carry leaves the top limb.

use num_bigint::BigUint;

pub(crate) struct LimbSeries {
    width: usize,
    rows: usize,
    limbs: Vec<u64>,
    used: Vec<u32>,
}

impl LimbSeries {
    /// The series `1` truncated to `rows` coefficients.
    pub(crate) fn one(rows: usize) -> Self {
        let mut limbs = vec![0; rows];
        let mut used = vec![0; rows];
        limbs[0] = 1;
        used[0] = 1;
        LimbSeries { width: 1, rows, limbs, used }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows
    }

    /// `row[dst] += row[src]` for `src < dst`.
    #[inline(always)]
    pub(crate) fn add_row(&mut self, dst: usize, src: usize) {
        debug_assert!(src < dst);
        let src_used = self.used[src] as usize;
        let w = self.width;
        let (lo, hi) = self.limbs.split_at_mut(dst * w);
        let d = &mut hi[..w];
        let s = &lo[src * w..src * w + src_used];
        let mut carry = 0u64;
        for (x, &y) in d.iter_mut().zip(s) {
            let sum = *x as u128 + y as u128 + carry as u128;
            *x = sum as u64;
            carry = (sum >> 64) as u64;
        }
        let mut top = src_used;
        if carry != 0 {
            top = self.propagate_carry(dst, src_used);
        }
        let used = &mut self.used[dst];
        if top as u32 > *used {
            *used = top as u32;
        }
    }

    /// Adds 1 at limb `from` of `row`, widening if needed. Returns the new
    /// used-limb bound for `row`.
    #[cold]
    fn propagate_carry(&mut self, row: usize, from: usize) -> usize {
        let w = self.width;
        let d = &mut self.limbs[row * w..row * w + w];
        let mut i = from;
        while i < w {
            let (v, c) = d[i].overflowing_add(1);
            d[i] = v;
            i += 1;
            if !c {
                return i;
            }
        }
        self.widen();
        self.limbs[row * self.width + w] = 1;
        w + 1
    }

    /// `row[dst] -= row[src]` for `src < dst`; the caller guarantees the
    /// result is nonnegative.
    #[inline(always)]
    pub(crate) fn sub_row(&mut self, dst: usize, src: usize) {
        debug_assert!(src < dst);
        let src_used = self.used[src] as usize;
        let w = self.width;
        let (lo, hi) = self.limbs.split_at_mut(dst * w);
        let d = &mut hi[..w];
        let s = &lo[src * w..src * w + src_used];
        let mut borrow = 0u64;
        for (x, &y) in d.iter_mut().zip(s) {
            let diff = (*x as u128).wrapping_sub(y as u128 + borrow as u128);
            *x = diff as u64;
            borrow = (diff >> 127) as u64;
        }
        let mut i = src_used;
        while borrow != 0 {
            assert!(i < w, "coefficient subtraction went negative");
            let (v, b) = d[i].overflowing_sub(1);
            d[i] = v;
            borrow = b as u64;
            i += 1;
        }
    }

    fn widen(&mut self) {
        let old = self.width;
        let new = old + old / 2 + 1;
        let mut limbs = vec![0u64; self.rows * new];
        for (row, chunk) in self.limbs.chunks_exact(old).enumerate() {
            limbs[row * new..row * new + old].copy_from_slice(chunk);
        }
        self.limbs = limbs;
        self.width = new;
    }

    pub(crate) fn into_biguints(self) -> Vec<BigUint> {
        let w = self.width;
        self.limbs
            .chunks_exact(w)
            .zip(&self.used)
            .map(|(row, &used)| {
                let digits: Vec<u32> = row[..used as usize]
                    .iter()
                    .flat_map(|&limb| [limb as u32, (limb >> 32) as u32])
                    .collect();
                BigUint::new(digits)
            })
            .collect()
    }
}
