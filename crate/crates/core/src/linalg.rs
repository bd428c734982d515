//! Bit-packed exact linear algebra over GF(2).
//!
//! Rows are dense bit vectors packed into `u64` words. The central object is
//! [`Echelon`], a reduced row-echelon form with pivot bookkeeping that serves
//! as rank calculator, membership test, normal-form reducer and linear
//! solver for everything else in the crate.

/// A dense GF(2) row vector of fixed width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    width: usize,
}

impl BitRow {
    pub fn zeros(width: usize) -> Self {
        BitRow {
            words: vec![0; width.div_ceil(64)],
            width,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.width);
        let (w, b) = (i / 64, i % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Reduced row-echelon form over GF(2).
///
/// Pivots are chosen at the lowest set bit of each row; callers order their
/// columns so that "lowest bit" means "leading monomial".
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    /// Rows in strictly increasing pivot order, fully reduced against each
    /// other: a pivot column is set in exactly one row.
    rows: Vec<BitRow>,
    pivots: Vec<usize>,
    /// pivot column -> row index, `usize::MAX` when the column is free.
    pivot_of_col: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_of_col: vec![usize::MAX; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot_col(&self, col: usize) -> bool {
        self.pivot_of_col[col] != usize::MAX
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| !self.is_pivot_col(c)).collect()
    }

    /// Reduces `row` against the current basis without inserting it.
    pub fn reduce(&self, mut row: BitRow) -> BitRow {
        loop {
            let Some(lead) = row.first_set() else {
                return row;
            };
            let r = self.pivot_of_col[lead];
            if r == usize::MAX {
                // Leading column is free; later pivot columns may still occur.
                return self.reduce_tail(row, lead);
            }
            row.xor_assign(&self.rows[r]);
        }
    }

    fn reduce_tail(&self, mut row: BitRow, from: usize) -> BitRow {
        let mut col = from + 1;
        while col < self.width {
            if row.get(col) {
                let r = self.pivot_of_col[col];
                if r != usize::MAX {
                    row.xor_assign(&self.rows[r]);
                }
            }
            col += 1;
        }
        row
    }

    /// Inserts a row, keeping the form reduced. Returns `true` when the row
    /// enlarged the span.
    pub fn insert(&mut self, row: BitRow) -> bool {
        let row = self.reduce(row);
        let Some(pivot) = row.first_set() else {
            return false;
        };
        // Clear the new pivot column from existing rows.
        for existing in &mut self.rows {
            if existing.get(pivot) {
                existing.xor_assign(&row);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, row);
        for (i, &p) in self.pivots.iter().enumerate() {
            self.pivot_of_col[p] = i;
        }
        true
    }

    pub fn contains(&self, row: BitRow) -> bool {
        self.reduce(row).is_zero()
    }

    /// The fully reduced representative of a single pivot column: the tail of
    /// its row (pivot bit cleared). For a free column the representative is
    /// the column itself.
    pub fn column_normal_form(&self, col: usize) -> BitRow {
        let r = self.pivot_of_col[col];
        if r == usize::MAX {
            let mut row = BitRow::zeros(self.width);
            row.set(col, true);
            return row;
        }
        let mut row = self.rows[r].clone();
        row.set(col, false);
        row
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }
}

/// A dense GF(2) matrix as a list of rows, with rank / solve / kernel
/// routines built on [`Echelon`].
#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: Vec<BitRow>,
    pub width: usize,
}

impl Matrix {
    pub fn new(width: usize) -> Self {
        Matrix {
            rows: Vec::new(),
            width,
        }
    }

    pub fn push(&mut self, row: BitRow) {
        debug_assert_eq!(row.width(), self.width);
        self.rows.push(row);
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.width);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    /// Solves `M x = b` where columns of `M` are the rows stored here
    /// (i.e. each stored row is the image of one source basis vector).
    ///
    /// Returns the canonical solution with every free coordinate zero, plus
    /// the kernel dimension, or `None` when `b` is outside the image.
    pub fn solve_from_columns(&self, b: &BitRow) -> (Option<BitRow>, usize) {
        let ncols = self.rows.len();
        // Augmented elimination: [image | source coordinates].
        let aug_width = self.width + ncols;
        let mut ech = Echelon::new(aug_width);
        for (j, col) in self.rows.iter().enumerate() {
            let mut row = BitRow::zeros(aug_width);
            for i in col.ones() {
                row.set(i, true);
            }
            row.set(self.width + j, true);
            ech.insert(row);
        }
        let kernel_dim = ech
            .rows()
            .iter()
            .filter(|r| r.first_set().is_some_and(|p| p >= self.width))
            .count();
        let mut target = BitRow::zeros(aug_width);
        for i in b.ones() {
            target.set(i, true);
        }
        let reduced = ech.reduce(target);
        // Solvable iff the image part vanished; the tail records one solution.
        if (0..self.width).any(|i| reduced.get(i)) {
            return (None, kernel_dim);
        }
        let mut solution = BitRow::zeros(ncols);
        for j in 0..ncols {
            if reduced.get(self.width + j) {
                solution.set(j, true);
            }
        }
        (Some(solution), kernel_dim)
    }

    /// A basis of `ker(M)` where, as in [`Matrix::solve_from_columns`], the
    /// stored rows are the images of the source basis vectors.
    pub fn kernel_basis(&self) -> Vec<BitRow> {
        let ncols = self.rows.len();
        let aug_width = self.width + ncols;
        let mut ech = Echelon::new(aug_width);
        for (j, col) in self.rows.iter().enumerate() {
            let mut row = BitRow::zeros(aug_width);
            for i in col.ones() {
                row.set(i, true);
            }
            row.set(self.width + j, true);
            ech.insert(row);
        }
        let mut basis = Vec::new();
        for r in ech.rows() {
            if r.first_set().is_some_and(|p| p >= self.width) {
                let mut v = BitRow::zeros(ncols);
                for j in 0..ncols {
                    if r.get(self.width + j) {
                        v.set(j, true);
                    }
                }
                basis.push(v);
            }
        }
        basis
    }
}
