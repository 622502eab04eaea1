use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FieldCtx, Fp2, Poly};

// FNV-1a over the characteristic and coefficients.
fn poly_hash(p: u64, f: &Poly) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let words = std::iter::once(p).chain(f.coeffs().iter().flat_map(|c| [c.a, c.b]));
    for w in words {
        for byte in w.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Roots of `f` lying in `F_{p²}`, with multiplicities, sorted canonically.
///
/// `gcd(f, x^{p²} - x)` isolates the product of the distinct `F_{p²}`-rational
/// linear factors; that product is split by random `gcd(g, (x+a)^{(q-1)/2} - 1)`
/// with a generator seeded from `p`, `f`, and the context salt.
///
/// Panics if `f` is zero.
pub fn roots_in_fp2(ctx: &FieldCtx, f: &Poly) -> Vec<(Fp2, u32)> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let f = ctx.poly_monic(f);
    let q = ctx.order();
    let xq = ctx
        .poly_modexp(&Poly::x(), q, &f)
        .expect("modulus has degree >= 1");
    let g = ctx.poly_gcd(&f, &ctx.poly_sub(&xq, &Poly::x()));

    let mut rng = ChaCha8Rng::seed_from_u64(poly_hash(ctx.p(), &f) ^ ctx.seed());
    let mut distinct = Vec::new();
    split_linear(ctx, g, &mut rng, &mut distinct);
    distinct.sort_unstable();

    distinct
        .into_iter()
        .map(|r| (r, multiplicity(ctx, &f, r)))
        .collect()
}

// `g` is monic, squarefree, and a product of linear factors.
fn split_linear(ctx: &FieldCtx, g: Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Fp2>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(ctx.neg(g.coeffs()[0])),
        Some(deg) => {
            let half = (ctx.order() - 1) / 2;
            loop {
                let shift = Poly::from_coeffs(vec![ctx.random(rng), ctx.one()]);
                let h = ctx.poly_modexp(&shift, half, &g).expect("deg g >= 2");
                let d = ctx.poly_gcd(&g, &ctx.poly_sub(&h, &Poly::constant(ctx.one())));
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && dd < deg {
                    let rest = ctx.poly_divrem(&g, &d).expect("d is nonzero").0;
                    split_linear(ctx, d, rng, out);
                    split_linear(ctx, rest, rng, out);
                    return;
                }
            }
        }
    }
}

fn multiplicity(ctx: &FieldCtx, f: &Poly, root: Fp2) -> u32 {
    let lin = ctx.poly_linear(root);
    let mut cur = f.clone();
    let mut m = 0;
    loop {
        let (quot, rem) = ctx.poly_divrem(&cur, &lin).expect("linear divisor");
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        cur = quot;
    }
}
