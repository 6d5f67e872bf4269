//! Reference schemes shipped with the crate.

use super::{parse_scheme, parse_scheme_detect, GammaConvention, Scheme};

/// Strassen's scheme reduced mod 2, written with application-convention gamma
/// (`c11 = M1 + M4 + M5 + M7`, ...).
const STRASSEN_TEXT: &str = "\
scheme n=2 m=7 convention=application
1: (a11 + a22)(b11 + b22)(c11 + c22)
2: (a21 + a22)(b11)(c21 + c22)
3: (a11)(b12 + b22)(c12 + c22)
4: (a22)(b11 + b21)(c11 + c21)
5: (a11 + a12)(b22)(c11 + c12)
6: (a11 + a21)(b11 + b12)(c22)
7: (a12 + a22)(b21 + b22)(c11)
";

/// Scheme "A" of the pair of neighboring 3x3 schemes with 23 multiplications,
/// transcribed as printed (gamma convention not declared).
pub const FIG1_SCHEME_A_TEXT: &str = concat!(
    "scheme n=3 m=23\n",
    "1: (a11 + a13 + a21 + a22 + a23)(b13)(c22 + c32)\n",
    "2: (a11 + a13 + a23)(b13 + b32)(c11 + c22 + c31 + c32)\n",
    "3: (a11 + a13)(b32)(c21 + c22 + c31 + c32)\n",
    "4: (a11 + a31)(b11 + b12 + b13)(c23)\n",
    "5: (a11 + a33)(b11 + b13 + b32)(c11 + c23)\n",
    "6: (a12 + a13 + a23)(b13 + b33)(c11 + c31)\n",
    "7: (a12 + a22 + a32)(b21 + b22 + b23)(c33)\n",
    "8: (a12 + a31 + a32 + a33)(b22)(c23 + c33)\n",
    "9: (a12 + a33)(b13 + b21 + b33)(c11 + c33)\n",
    "10: (a12)(b13 + b23 + b33)(c31 + c33)\n",
    "11: (a21 + a31 + a33)(b11)(c12 + c22)\n",
    "12: (a21)(b11 + b12 + b13)(c22)\n",
    "13: (a22 + a31 + a33)(b13 + b22)(c12 + c13 + c22 + c33)\n",
    "14: (a22 + a32 + a33)(b21)(c13 + c33)\n",
    "15: (a22)(b13 + b21 + b22)(c12 + c13)\n",
    "16: (a22)(b13 + b23)(c32 + c33)\n",
    "17: (a23)(b31)(c11 + c12 + c31 + c32)\n",
    "18: (a31 + a33)(b11 + b13 + b22)(c12 + c13 + c22 + c23)\n",
    "19: (a33)(b11 + b21 + b31)(c11 + c13)\n",
    "20: (a12)(b22)(c21 + c23)\n",
    "21: (a11)(b12 + b32)(c21 + c23)\n",
    "22: (a13 + a33)(b31 + b32 + b33)(c11)\n",
    "23: (a23)(b31 + b32 + b33)(c11 + c31 + c32)\n",
);

/// Scheme "B": shares summands 1-19 with [`FIG1_SCHEME_A_TEXT`].
pub const FIG1_SCHEME_B_TEXT: &str = concat!(
    "scheme n=3 m=23\n",
    "1: (a11 + a13 + a21 + a22 + a23)(b13)(c22 + c32)\n",
    "2: (a11 + a13 + a23)(b13 + b32)(c11 + c22 + c31 + c32)\n",
    "3: (a11 + a13)(b32)(c21 + c22 + c31 + c32)\n",
    "4: (a11 + a31)(b11 + b12 + b13)(c23)\n",
    "5: (a11 + a33)(b11 + b13 + b32)(c11 + c23)\n",
    "6: (a12 + a13 + a23)(b13 + b33)(c11 + c31)\n",
    "7: (a12 + a22 + a32)(b21 + b22 + b23)(c33)\n",
    "8: (a12 + a31 + a32 + a33)(b22)(c23 + c33)\n",
    "9: (a12 + a33)(b13 + b21 + b33)(c11 + c33)\n",
    "10: (a12)(b13 + b23 + b33)(c31 + c33)\n",
    "11: (a21 + a31 + a33)(b11)(c12 + c22)\n",
    "12: (a21)(b11 + b12 + b13)(c22)\n",
    "13: (a22 + a31 + a33)(b13 + b22)(c12 + c13 + c22 + c33)\n",
    "14: (a22 + a32 + a33)(b21)(c13 + c33)\n",
    "15: (a22)(b13 + b21 + b22)(c12 + c13)\n",
    "16: (a22)(b13 + b23)(c32 + c33)\n",
    "17: (a23)(b31)(c11 + c12 + c31 + c32)\n",
    "18: (a31 + a33)(b11 + b13 + b22)(c12 + c13 + c22 + c23)\n",
    "19: (a33)(b11 + b21 + b31)(c11 + c13)\n",
    "20: (a11 + a12)(b22)(c21 + c23)\n",
    "21: (a11)(b12 + b22 + b32)(c21 + c23)\n",
    "22: (a13 + a33)(b31 + b32 + b33)(c31 + c32)\n",
    "23: (a13 + a23 + a33)(b31 + b32 + b33)(c11 + c31 + c32)\n",
);

pub fn strassen() -> Scheme {
    parse_scheme(STRASSEN_TEXT)
        .expect("bundled Strassen text parses")
        .with_label("strassen")
}

fn fig1(text: &str, label: &str) -> Scheme {
    let (s, conv) = parse_scheme_detect(text).expect("bundled scheme text parses");
    debug_assert_eq!(conv, GammaConvention::Flipped);
    s.with_label(label)
}

pub fn fig1_scheme_a() -> Scheme {
    fig1(FIG1_SCHEME_A_TEXT, "fig1-a")
}

pub fn fig1_scheme_b() -> Scheme {
    fig1(FIG1_SCHEME_B_TEXT, "fig1-b")
}
