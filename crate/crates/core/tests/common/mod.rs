//! The rows of the published table of Adem elements, `[n,m]` with
//! `0 < n < 2m` and `n + m <= 7`: the `2 Sq(R)` and `Y_{-1,0} Sq(R)` parts
//! of the `D_0` column and the `X`, `mu_0 X` parts of the last column.

use secondary::d0::D0Elt;
use secondary::ehat::EHatElt;
use secondary::milnor::ExpSeq;

pub struct Row {
    pub n: u32,
    pub m: u32,
    pub two_sq: &'static [&'static [u32]],
    pub y: &'static [&'static [u32]],
    pub x: &'static [(i32, i32, &'static [u32])],
    pub mu0x: &'static [(i32, i32, &'static [u32])],
}

const E: &[u32] = &[];

pub const TABLE: &[Row] = &[
    Row { n: 1, m: 1, two_sq: &[&[2]], y: &[E], x: &[(-1, 0, E)], mu0x: &[(0, 0, E)] },
    Row { n: 1, m: 2, two_sq: &[], y: &[&[1]], x: &[(-1, 0, &[1]), (0, 0, E)], mu0x: &[(0, 0, &[1])] },
    Row {
        n: 2, m: 2, two_sq: &[&[1, 1], &[4]], y: &[&[2]],
        x: &[(-1, 0, &[2]), (0, 0, &[1])], mu0x: &[(0, 0, &[2]), (0, 1, E)],
    },
    Row { n: 1, m: 3, two_sq: &[], y: &[&[2]], x: &[(-1, 0, &[2]), (0, 0, &[1])], mu0x: &[(0, 0, &[2])] },
    Row {
        n: 3, m: 2, two_sq: &[&[2, 1], &[5]], y: &[&[0, 1], &[3]],
        x: &[(-1, 0, &[0, 1]), (-1, 0, &[3]), (0, 0, &[2]), (0, 1, E)],
        mu0x: &[(0, 0, &[0, 1]), (0, 0, &[3]), (0, 1, &[1])],
    },
    Row { n: 2, m: 3, two_sq: &[&[2, 1]], y: &[], x: &[(0, 1, E)], mu0x: &[(0, 1, &[1])] },
    Row { n: 1, m: 4, two_sq: &[&[5]], y: &[&[3]], x: &[(-1, 0, &[3]), (0, 0, &[2])], mu0x: &[(0, 0, &[3])] },
    Row {
        n: 3, m: 3, two_sq: &[&[6]], y: &[&[1, 1], &[4]],
        x: &[(-1, 0, &[1, 1]), (-1, 0, &[4]), (0, 0, &[0, 1]), (0, 0, &[3])],
        mu0x: &[(0, 0, &[1, 1]), (0, 0, &[4])],
    },
    Row {
        n: 2, m: 4, two_sq: &[&[3, 1], &[6]], y: &[&[4]],
        x: &[(-1, 0, &[4]), (0, 0, &[3]), (0, 1, &[1])], mu0x: &[(0, 0, &[4]), (0, 1, &[2])],
    },
    Row { n: 1, m: 5, two_sq: &[&[6]], y: &[&[4]], x: &[(-1, 0, &[4]), (0, 0, &[3])], mu0x: &[(0, 0, &[4])] },
    Row {
        n: 4, m: 3, two_sq: &[&[1, 2], &[4, 1]], y: &[&[2, 1], &[5]],
        x: &[(-1, 0, &[2, 1]), (-1, 0, &[5]), (0, 0, &[1, 1]), (0, 0, &[4])],
        mu0x: &[(0, 0, &[2, 1]), (0, 0, &[5]), (0, 1, &[0, 1])],
    },
    Row {
        n: 3, m: 4, two_sq: &[], y: &[&[2, 1]],
        x: &[(-1, 0, &[2, 1]), (0, 1, &[2]), (0, 0, &[1, 1])], mu0x: &[(0, 0, &[2, 1]), (0, 1, &[3])],
    },
    Row { n: 2, m: 5, two_sq: &[&[4, 1]], y: &[], x: &[(0, 1, &[2])], mu0x: &[(0, 1, &[3])] },
    Row { n: 1, m: 6, two_sq: &[], y: &[&[5]], x: &[(-1, 0, &[5]), (0, 0, &[4])], mu0x: &[(0, 0, &[5])] },
];

pub fn seq(r: &[u32]) -> ExpSeq {
    ExpSeq::from(r)
}

pub fn expected(row: &Row) -> EHatElt {
    let mut d = D0Elt::zero();
    for r in row.two_sq {
        d.add_sq(seq(r), 2);
    }
    for r in row.y {
        d.add_y(-1, 0, seq(r));
    }
    let mut e = EHatElt::from_d0(d);
    for (k, l, r) in row.x {
        e.add_assign(&EHatElt::x(*k, *l, seq(r)).unwrap());
    }
    for (k, l, r) in row.mu0x {
        e.add_assign(&EHatElt::mu0x(*k, *l, seq(r)).unwrap());
    }
    e
}
