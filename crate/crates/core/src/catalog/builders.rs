//! Constructors for the named functional equations.

use rug::Rational;

use super::xi7::{xi7_explicit_sum, xi7_symmetric_sum, PhiSign};
use super::{EquationSpec, RootBinding};
use crate::exact::rat;
use crate::formal::FormalSum;
use crate::ratfunc::{parse, RatFunc};

/// Parses an expression built from trusted templates.
fn expr(s: &str) -> RatFunc {
    parse(s).unwrap_or_else(|e| panic!("builder expression {s:?}: {e}"))
}

fn one(c: i64) -> Rational {
    Rational::from(c)
}

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `[xy] - [x] - [y] - [(1-x)/(1-1/y)] - [(1-y)/(1-1/x)]`.
pub fn five_term(x: &str, y: &str) -> EquationSpec {
    let sum = FormalSum::from_terms([
        (one(1), expr(&format!("{x}*{y}"))),
        (one(-1), expr(x)),
        (one(-1), expr(y)),
        (one(-1), expr(&format!("(1-{x})/(1-1/{y})"))),
        (one(-1), expr(&format!("(1-{y})/(1-1/{x})"))),
    ]);
    EquationSpec::new("five-term", 2, vars(&[x, y]), sum)
        .constraint(&format!("{x}, {y} not in {{0, 1}}"))
        .anchor("five-term relation of the dilogarithm")
}

/// `[x] + [1/(1-x)] + [1-1/x] - [1]`.
pub fn three_term(x: &str) -> EquationSpec {
    let sum = FormalSum::from_terms([
        (one(1), expr(x)),
        (one(1), expr(&format!("1/(1-{x})"))),
        (one(1), expr(&format!("1-1/{x}"))),
        (one(-1), RatFunc::one()),
    ]);
    EquationSpec::new("three-term", 3, vars(&[x]), sum)
        .constraint(&format!("{x} not in {{0, 1}}"))
        .anchor("three-term relation of the trilogarithm")
}

/// Arguments of the 22-term relation in the variables `a`, with
/// `b_i = 1 - a_i + a_i a_(i-1)`; first the 16 terms with coefficient +1,
/// then the 6 with coefficient -1.
pub fn goncharov22_terms(a: [&str; 3]) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let av = |i: usize| format!("({})", a[i % 3]);
    let bv = |i: usize| format!("(1-{}+{}*{})", av(i), av(i), av((i + 2) % 3));
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..3 {
        let (im1, ip1, ip2) = ((i + 2) % 3, (i + 1) % 3, (i + 2) % 3);
        plus.push(expr(&format!("1/{}", av(i))));
        plus.push(expr(&bv(i)));
        plus.push(expr(&format!("{}*{}/{}", av(i), av(im1), bv(i))));
        plus.push(expr(&format!("{}/({}*{})", bv(i), bv(ip1), av(ip2))));
        plus.push(expr(&format!("-{}*{}/{}", bv(i), av(ip1), bv(ip1))));
        minus.push(expr(&format!("{}/{}", bv(i), av(im1))));
        minus.push(expr(&format!("{}/({}*{}*{})", bv(i), bv(ip1), av(i), av(im1))));
    }
    plus.push(expr(&format!("-1/({}*{}*{})", av(0), av(1), av(2))));
    (plus, minus)
}

fn goncharov22_sum(a: [&str; 3]) -> FormalSum {
    let (plus, minus) = goncharov22_terms(a);
    let mut s = FormalSum::new();
    for f in plus {
        s.add_term(one(1), f);
    }
    for f in minus {
        s.add_term(one(-1), f);
    }
    s.add_term(one(-3), RatFunc::one());
    s
}

/// The 22-term relation in three variables.
pub fn goncharov22(a1: &str, a2: &str, a3: &str) -> EquationSpec {
    EquationSpec::new("goncharov22", 3, vars(&[a1, a2, a3]), goncharov22_sum([a1, a2, a3]))
        .constraint("all arguments finite and nonzero")
        .anchor("22-term trilogarithm relation with beta_i = 1 - alpha_i + alpha_i alpha_(i-1)")
}

/// The four `t_i` with `t_4 = 1/(t_1 t_2 t_3)`, as expression strings.
fn t_quad(t: [&str; 3]) -> [String; 4] {
    [
        format!("({})", t[0]),
        format!("({})", t[1]),
        format!("({})", t[2]),
        format!("(1/({}*{}*{}))", t[0], t[1], t[2]),
    ]
}

/// The symmetric 22-term form in `t_1, t_2, t_3` (with `prod t_i = 1`).
pub fn goncharov22_sym_sum(t: [&str; 3]) -> FormalSum {
    let tv = t_quad(t);
    let mut s = FormalSum::new();
    for ti in &tv {
        s.add_term(one(1), expr(ti));
    }
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s.add_term(one(1), expr(&format!("(1-{})/(1-1/{})", tv[i], tv[j])));
                s.add_term(rat(-1, 4), expr(&format!("{}*{}", tv[i], tv[j])));
            }
        }
    }
    for p in permutations4() {
        let [i, j, k, l] = p;
        s.add_term(
            rat(-1, 8),
            expr(&format!(
                "(1-{})*(1-{})/((1-1/{})*(1-1/{}))",
                tv[i], tv[j], tv[k], tv[l]
            )),
        );
    }
    s.add_term(one(-3), RatFunc::one());
    s
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let p = [i, j, k, l];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

pub fn goncharov22_sym(t1: &str, t2: &str, t3: &str) -> EquationSpec {
    EquationSpec::new("goncharov22-sym", 3, vars(&[t1, t2, t3]), goncharov22_sym_sum([t1, t2, t3]))
        .constraint("t4 = 1/(t1 t2 t3); all t_i not in {0, 1}")
        .anchor("symmetric presentation of the 22-term relation in t_1..t_4 with prod t_i = 1")
}

/// The 17 generic terms `f(a,b,c,t)`: 12 with coefficient +1, 5 with -1.
pub fn f17_sum(a: &str, b: &str, c: &str, t: &str) -> FormalSum {
    let plus = [
        "(1-C*T)*A/(A-T)",
        "(1-C*T)*B/(B-T)",
        "(1-C*T)/(C*(A-T))",
        "(1-C*T)/(C*(B-T))",
        "(A*B*C-T)/((A-T)*B*C)",
        "(A*B*C-T)/((B-T)*A*C)",
        "(A*B*C-T)/(A-T)",
        "(A*B*C-T)/(B-T)",
        "(A-T)*B*(A*C-1)/((B-T)*A*(B*C-1))",
        "(T-A)*(1-B*C)/((T-B)*(1-A*C))",
        "(T*C-1)*B*(A*C-1)/((A*B*C-T)*(B*C-1))",
        "(T*C-1)*A*(B*C-1)/((A*B*C-T)*(A*C-1))",
    ];
    let minus = [
        "(1-C*T)*A*B*C/(A*B*C-T)",
        "(1-C*T)/((A*B*C-T)*C)",
        "(T-A)/(T-B)",
        "B*(A-T)/(A*(B-T))",
        "(B-T)*(A-T)*C/((A*B*C-T)*(1-C*T))",
    ];
    let fill = |s: &str| {
        s.chars()
            .map(|ch| match ch {
                'A' => format!("({a})"),
                'B' => format!("({b})"),
                'C' => format!("({c})"),
                'T' => format!("({t})"),
                other => other.to_string(),
            })
            .collect::<String>()
    };
    let mut s = FormalSum::new();
    for p in plus {
        s.add_term(one(1), expr(&fill(p)));
    }
    for m in minus {
        s.add_term(one(-1), expr(&fill(m)));
    }
    s
}

pub fn f17(a: &str, b: &str, c: &str, t: &str) -> EquationSpec {
    EquationSpec::new("f17", 3, vars(&[a, b, c, t]), f17_sum(a, b, c, t))
        .anchor("17 generic terms f(a,b,c,t); not itself a functional equation")
        .not_an_equation()
}

/// `f(a,b,c,t) - f(a,b,c,u)`.
pub fn relation34(a: &str, b: &str, c: &str, t: &str, u: &str) -> EquationSpec {
    let sum = f17_sum(a, b, c, t).sub(&f17_sum(a, b, c, u));
    EquationSpec::new("relation34", 3, vars(&[a, b, c, t, u]), sum)
        .constraint("all arguments finite and nonzero")
        .anchor("34-term relation: difference of two specializations of f(a,b,c,t)")
}

/// `Γ(x,y,z) = γ(1/(1-x), (1-x)/(1-xy), 1-z) + γ(1-1/x, (1-xy)/(y(1-x)), 1/(1-1/z))`.
pub fn gamma_sum(x: &str, y: &str, z: &str) -> FormalSum {
    let first = [
        format!("1/(1-{x})"),
        format!("(1-{x})/(1-{x}*{y})"),
        format!("1-{z}"),
    ];
    let second = [
        format!("1-1/{x}"),
        format!("(1-{x}*{y})/({y}*(1-{x}))"),
        format!("1/(1-1/{z})"),
    ];
    let g = |args: &[String; 3]| goncharov22_sum([&args[0], &args[1], &args[2]]);
    g(&first).add(&g(&second))
}

pub fn gamma21(x: &str, y: &str, z: &str) -> EquationSpec {
    EquationSpec::new("gamma21", 3, vars(&[x, y, z]), gamma_sum(x, y, z))
        .anchor("sum of two 22-term relations Gamma(x,y,z)")
}

/// `Γ(x_1,x_2,z_1) + Γ(x_2,x_1,z_1)`.
pub fn gamma21_symmetrized(x1: &str, x2: &str, z1: &str) -> EquationSpec {
    let sum = gamma_sum(x1, x2, z1).add(&gamma_sum(x2, x1, z1));
    EquationSpec::new("gamma21-symmetrized", 3, vars(&[x1, x2, z1]), sum)
        .anchor("symmetrization of Gamma in its first two arguments")
}

/// The displayed 21-class right-hand side, with `z_2 = 1/(x_1 x_2 z_1)` and
/// `j(t,u) = (1-1/u)/(1-t)`.
pub fn gamma21_rhs_sum(x1: &str, x2: &str, z1: &str) -> FormalSum {
    let xs = [format!("({x1})"), format!("({x2})")];
    let zs = [format!("({z1})"), format!("(1/({x1}*{x2}*{z1}))")];
    let j = |t: &str, u: &str| format!("((1-1/{u})/(1-{t}))");
    let jz = j(&zs[0], &zs[1]);
    let mut s = FormalSum::new();
    s.add_term(one(-2), expr(&format!("{}*{}", xs[0], xs[1])));
    s.add_term(one(-2), RatFunc::one());
    for i in 0..2 {
        let (xi, xo, zi, zo) = (&xs[i], &xs[1 - i], &zs[i], &zs[1 - i]);
        let jx = j(xi, xo);
        let z1 = &zs[0];
        for (c, e) in [
            (2, xi.clone()),
            (2, jx.clone()),
            (2, zi.clone()),
            (2, j(zi, zo)),
            (-2, format!("{xi}*{jz}")),
            (-2, format!("{jx}*{jz}")),
            (-2, format!("{xi}*{z1}")),
            (-2, format!("{jx}*{z1}")),
            (1, format!("{xi}*{z1}*{jx}*{jz}")),
            (1, format!("{jx}*{jz}/({xi}*{z1})")),
        ] {
            s.add_term(one(c), expr(&e));
        }
    }
    s
}

pub fn gamma21_rhs(x1: &str, x2: &str, z1: &str) -> EquationSpec {
    EquationSpec::new("gamma21-rhs", 3, vars(&[x1, x2, z1]), gamma21_rhs_sum(x1, x2, z1))
        .anchor("displayed 21-class form of the symmetrized Gamma, coefficients in {1, 2, -1, -2}")
}

/// Template for the weight-4 family: arguments in placeholders
/// `x1..xn`, `y1..yn` that are bound to the roots of
/// `x^(n-1)(x-1) = t` and `y^(n-1)(y-1) = u`. Needs `2 <= n <= 6`.
pub fn fourlog(n: usize) -> EquationSpec {
    assert!((2..=6).contains(&n), "fourlog template needs 2 <= n <= 6");
    let nn = n as i64;
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let mut s = FormalSum::new();
    let prod = |v: &[String]| v.join("*");
    s.add_term(one(nn * (nn - 2)), expr(&format!("({})/({})", prod(&xs), prod(&ys))));
    for x in &xs {
        for y in &ys {
            s.add_term(one(-(nn - 1) * (nn - 1)), expr(&format!("(1-1/{x})/(1-1/{y})")));
            s.add_term(one(nn * nn), expr(&format!("(1-{x})/(1-{y})")));
            s.add_term(one(-nn * nn * (nn - 1) * (nn - 1)), expr(&format!("{x}/{y}")));
        }
    }
    for (x, y) in xs.iter().zip(&ys) {
        s.add_term(one(nn * (nn - 1) * (nn - 1)), expr(&format!("1-1/{x}")));
        s.add_term(one(-nn * (nn - 1) * (nn - 1)), expr(&format!("1-1/{y}")));
    }
    let mut all = xs.clone();
    all.extend(ys);
    EquationSpec::new(&format!("fourlog-n{n}"), 4, all, s)
        .constraint("x_i run through the roots of x^(n-1)(x-1) = t, y_j through those of y^(n-1)(y-1) = u")
        .anchor("family of 4-logarithm equations from the roots of x^(n-1)(x-1) = t")
        .with_binding(RootBinding { n })
}

pub fn xi7_explicit(t: &str, u: &str) -> EquationSpec {
    EquationSpec::new("xi7-explicit", 7, vars(&[t, u]), xi7_explicit_sum(t, u))
        .constraint("f_j(t), f_j(u) not in {0, oo} for j = 1, 2, 3")
        .anchor("274-argument two-variable 7-logarithm equation, explicit block table")
}

/// Symmetric form with the repeated-entry sign convention for `φ_α`, under
/// which it is a functional equation.
pub fn xi7_symmetric(t: &str, u: &str) -> EquationSpec {
    EquationSpec::new("xi7-symmetric", 7, vars(&[t, u]), xi7_symmetric_sum(t, u, PhiSign::RepeatedEntry))
        .constraint("f_j(t), f_j(u) not in {0, oo} for j = 1, 2, 3")
        .anchor("symmetric form built from A_k, omega, Theta and phi_alpha")
}
