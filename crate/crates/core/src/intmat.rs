//! Small exact integer-matrix routines: Hermite normal form, integer kernel
//! bases and lattice membership.  Entries are 64-bit with checked arithmetic;
//! any overflow aborts, which never triggers at the desk scales handled here.

use alloc::vec;
use alloc::vec::Vec;

pub type Mat = Vec<Vec<i64>>;

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in exact linear algebra")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in exact linear algebra")
}

/// `row_a += k * row_b`, elementwise.
fn add_multiple(a: &mut [i64], b: &[i64], k: i64) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = checked_add(*x, checked_mul(k, y));
    }
}

/// Clears the entries below `pivot_row` in `col` by Euclidean row steps,
/// leaving the (absolutely) smallest nonzero entry on the pivot row.
/// Returns true when a nonzero pivot remains in the column.
fn eliminate_column(rows: &mut Mat, pivot_row: usize, col: usize) -> bool {
    loop {
        let mut idx: Option<usize> = None;
        for r in pivot_row..rows.len() {
            if rows[r][col] != 0 {
                idx = match idx {
                    None => Some(r),
                    Some(i) if rows[r][col].abs() < rows[i][col].abs() => Some(r),
                    other => other,
                };
            }
        }
        let Some(best) = idx else { return false };
        rows.swap(pivot_row, best);
        let mut done = true;
        let head = rows[pivot_row].clone();
        for r in (pivot_row + 1)..rows.len() {
            if rows[r][col] != 0 {
                let q = rows[r][col].div_euclid(head[col]);
                add_multiple(&mut rows[r], &head, -q);
                if rows[r][col] != 0 {
                    done = false;
                }
            }
        }
        if done {
            return true;
        }
    }
}

/// Row-style Hermite normal form: the unique echelon form of the row lattice
/// with positive pivots and entries above each pivot reduced into
/// `0..pivot`; zero rows are dropped.
pub fn row_hnf(mat: &Mat) -> Mat {
    let mut rows: Mat = mat.clone();
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        if !eliminate_column(&mut rows, pivot_row, col) {
            continue;
        }
        if rows[pivot_row][col] < 0 {
            for x in rows[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let head = rows[pivot_row].clone();
        for r in 0..pivot_row {
            let q = rows[r][col].div_euclid(head[col]);
            if q != 0 {
                add_multiple(&mut rows[r], &head, -q);
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

/// True iff `v` lies in the lattice spanned by the rows of `basis`.
pub fn lattice_contains(basis: &Mat, v: &[i64]) -> bool {
    let h = row_hnf(basis);
    let mut v = v.to_vec();
    for row in &h {
        let col = match row.iter().position(|&x| x != 0) {
            Some(c) => c,
            None => continue,
        };
        if v[col] != 0 {
            if v[col] % row[col] != 0 {
                return false;
            }
            let q = v[col] / row[col];
            add_multiple(&mut v, row, -q);
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Integer basis of `{ x : mat · x = 0 }`, computed by row-reducing the
/// transpose augmented with an identity tail that records the operations.
pub fn kernel(mat: &Mat, ncols: usize) -> Mat {
    let nrows = mat.len();
    let mut t: Mat = (0..ncols)
        .map(|c| {
            let mut row: Vec<i64> = (0..nrows).map(|r| mat[r][c]).collect();
            let mut tail = vec![0i64; ncols];
            tail[c] = 1;
            row.extend(tail);
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..nrows {
        if pivot_row == t.len() {
            break;
        }
        if eliminate_column(&mut t, pivot_row, col) {
            pivot_row += 1;
        }
    }
    // rows past pivot_row have zero head; their tails span the kernel
    t[pivot_row..]
        .iter()
        .map(|row| row[nrows..].to_vec())
        .filter(|tail| tail.iter().any(|&x| x != 0))
        .collect()
}
