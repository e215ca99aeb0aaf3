//! Reference matrices for the 3- and 4-qubit collective channels.

#![allow(dead_code)]

use commutant_core::CMatrix;

/// `B_r`, a self-adjoint element of the 3-qubit collective commutant.
pub fn b_r() -> CMatrix {
    CMatrix::from_real_rows(&[
        [1., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., 0., 1., 0., 0., 0.],
        [0., 0., 0., 0., 1., 0., 0., 0.],
        [0., 0., 0., -1., 0., 1., 1., 0.],
        [0., 1., 1., 0., -1., 0., 0., 0.],
        [0., 0., 0., 1., 0., 0., 0., 0.],
        [0., 0., 0., 1., 0., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 1.],
    ])
}

pub fn b_s() -> CMatrix {
    CMatrix::from_real_rows(&[
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 1., 0., -1., 0., 0., 0.],
        [0., 0., 0., 1., 0., -1., 0., 0.],
        [0., 0., -1., 0., 1., 0., 0., 0.],
        [0., 0., 0., -1., 0., 1., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
    ])
}

pub fn b_t() -> CMatrix {
    CMatrix::from_real_rows(&[
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 1., 0., 0., -1., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., 1., 0., 0., -1., 0.],
        [0., -1., 0., 0., 1., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., -1., 0., 0., 1., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
    ])
}

pub fn b_u() -> CMatrix {
    CMatrix::from_real_rows(&[
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 1., 0., -1., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., 1., 0., -1., 0., 0.],
        [0., 0., -1., 0., 1., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., -1., 0., 1., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
    ])
}

/// Spectral projection of `B_r` for eigenvalue 0.
pub fn p_0() -> CMatrix {
    let h = 0.5;
    CMatrix::from_real_rows(&[
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., h, -h, 0., 0., 0., 0., 0.],
        [0., -h, h, 0., 0., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., 0., 0., h, -h, 0.],
        [0., 0., 0., 0., 0., -h, h, 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
    ])
}

/// Spectral projection of `B_r` for eigenvalue −2.
pub fn p_minus_2() -> CMatrix {
    let (s, t) = (1.0 / 6.0, 1.0 / 3.0);
    CMatrix::from_real_rows(&[
        [0., 0., 0., 0., 0., 0., 0., 0.],
        [0., s, s, 0., -t, 0., 0., 0.],
        [0., s, s, 0., -t, 0., 0., 0.],
        [0., 0., 0., 2. * t, 0., -t, -t, 0.],
        [0., -t, -t, 0., 2. * t, 0., 0., 0.],
        [0., 0., 0., -t, 0., s, s, 0.],
        [0., 0., 0., -t, 0., s, s, 0.],
        [0., 0., 0., 0., 0., 0., 0., 0.],
    ])
}

/// Spectral projection of `B_r` for eigenvalue 1.
pub fn p_1() -> CMatrix {
    let t = 1.0 / 3.0;
    CMatrix::from_real_rows(&[
        [1., 0., 0., 0., 0., 0., 0., 0.],
        [0., t, t, 0., t, 0., 0., 0.],
        [0., t, t, 0., t, 0., 0., 0.],
        [0., 0., 0., t, 0., t, t, 0.],
        [0., t, t, 0., t, 0., 0., 0.],
        [0., 0., 0., t, 0., t, t, 0.],
        [0., 0., 0., t, 0., t, t, 0.],
        [0., 0., 0., 0., 0., 0., 0., 1.],
    ])
}

/// `B₀`, a self-adjoint element of the 4-qubit collective commutant.
pub fn b_0() -> CMatrix {
    let mut rows = vec![[0.0f64; 16]; 16];
    let entries: &[(usize, usize, f64)] = &[
        (2, 4, 1.), (2, 8, -1.),
        (3, 6, 1.), (3, 10, -1.),
        (4, 2, 1.), (4, 8, -1.),
        (5, 6, 1.), (5, 12, -1.),
        (6, 3, 1.), (6, 5, 1.), (6, 9, -2.),
        (7, 7, 2.), (7, 11, -1.), (7, 13, -1.),
        (8, 2, -1.), (8, 4, -1.), (8, 8, 2.),
        (9, 6, -2.), (9, 10, 1.), (9, 12, 1.),
        (10, 3, -1.), (10, 9, 1.),
        (11, 7, -1.), (11, 13, 1.),
        (12, 5, -1.), (12, 9, 1.),
        (13, 7, -1.), (13, 11, 1.),
    ];
    for &(i, j, v) in entries {
        rows[i][j] = v;
    }
    CMatrix::from_real_rows(&rows)
}
