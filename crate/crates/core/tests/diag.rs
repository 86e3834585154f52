use sqseq_core::heights::RealCtx;
use sqseq_core::{rat, ratio, Rat};
use num_traits::Signed;

// mirror of the archimedean series for y^2 = x^3 + 9 at P = (6, 15),
// exact rational arithmetic, printing each accumulated term
#[test]
fn mirror_series() {
    // minimal model [0,0,0,0,9]: b2=0,b4=0,b6=36,b8=0
    let (b2, b4, b6, b8) = (rat(0), rat(0), rat(36), rat(0));
    let (b2s, b4s, b6s, b8s) = (rat(-12), rat(6), rat(32), rat(-105));
    let w_main = [rat(0), rat(4), b2.clone(), rat(2) * &b4, b6.clone()];
    let z_main = [rat(1), rat(0), -b4.clone(), rat(-2) * &b6, -b8.clone()];
    let w_shift = [rat(0), rat(4), b2s.clone(), rat(2) * &b4s, b6s.clone()];
    let z_shift = [rat(1), rat(0), -b4s.clone(), rat(-2) * &b6s, -b8s.clone()];
    let eval = |cs: &[Rat; 5], t: &Rat| -> Rat {
        let mut acc = rat(0);
        for c in cs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    let x = rat(6);
    let x1 = &x + rat(1);
    let mut beta = x.abs() >= x1.abs();
    let mut t = if beta { x.recip() } else { x1.recip() };
    println!("beta={beta} t0={t} lead={}", if beta { &x } else { &x1 });
    let mut ctx = RealCtx::new(192);
    let mut total = 0.0f64;
    for n in 0..12 {
        let (wc, zc) = if beta { (&w_main, &z_main) } else { (&w_shift, &z_shift) };
        let w = eval(wc, &t);
        let z = eval(zc, &t);
        let take_z = w.abs() <= rat(2) * z.abs();
        let acc = if take_z { z.clone() } else if beta { &z + &w } else { &z - &w };
        let lnv_iv = ctx.ln_rat_abs(&acc);
        let lnv = ctx.mid_f64(&lnv_iv);
        let term = lnv * 0.25f64.powi(n + 1);
        total += term;
        println!("n={n} beta={beta} take_z={take_z} |t|={:.6} acc~{:.6} ln={:.6} term={:.8}",
            t.abs().numer().to_string().parse::<f64>().unwrap_or(0.0)
                / t.abs().denom().to_string().parse::<f64>().unwrap_or(1.0),
            acc.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
                / acc.denom().to_string().parse::<f64>().unwrap_or(1.0),
            lnv, term);
        t = &w / &acc;
        if !take_z { beta = !beta; }
    }
    let lead = if x.abs() >= x1.abs() { x.clone() } else { x1.clone() };
    let lead_iv = ctx.ln_rat_abs(&lead);
    let lead_ln = ctx.mid_f64(&lead_iv);
    println!("lead_ln={lead_ln} mu={total}");
    println!("Lambda = {}", (lead_ln + total) / 2.0);
}
