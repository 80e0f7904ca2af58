use mapcut::qseries::catalytic::CatalyticSeries;
use mapcut::ratio::{int, to_f64};
use mapcut::mapgf::{map_count, map_series_catalytic};
use num::rational::BigRational;
use num::Zero;

fn extended(s: &CatalyticSeries, order: usize) -> CatalyticSeries {
    let mut out = CatalyticSeries::zero(order, s.name());
    for n in 0..=s.order().min(order) {
        for (k, c) in s.z_coeff(n).iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&CatalyticSeries::monomial(c.clone(), n, k, order, s.name()));
            }
        }
    }
    out
}

fn s_op(f: &CatalyticSeries) -> CatalyticSeries {
    let f1 = f.at_one();
    f.mul_u()
        .sub(&CatalyticSeries::from_series(&f1, 'u'))
        .div_u_minus_one("x-derivative").unwrap()
}

fn main() {
    let order = 44;
    let m_full = map_series_catalytic(order).unwrap();
    let pass_c = |c: &CatalyticSeries| {
        let k = c.order();
        let m = m_full.truncated(k);
        let zu = CatalyticSeries::monomial(int(1), 1, 1, k, 'u');
        let zu2 = CatalyticSeries::monomial(int(1), 1, 2, k, 'u');
        zu2.mul(&m).scale(&int(2)).mul(c)
            .add(&zu.mul(&s_op(&m)))
            .add(&zu.mul(&s_op(c)))
    };
    let mut c = CatalyticSeries::zero(0, 'u');
    for k in 1..=order { c = pass_c(&extended(&c, k)); }

    let pass_d = |d: &CatalyticSeries, c: &CatalyticSeries| {
        let k = d.order();
        let m = m_full.truncated(k);
        let ck = c.truncated(k);
        let zu = CatalyticSeries::monomial(int(1), 1, 1, k, 'u');
        let zu2 = CatalyticSeries::monomial(int(1), 1, 2, k, 'u');
        zu2.mul(&m).scale(&int(2)).mul(d)
            .add(&zu2.mul(&ck.mul(&ck)).scale(&int(2)))
            .add(&zu.mul(&s_op(&ck)).scale(&int(2)))
            .add(&zu.mul(&s_op(d)))
    };
    let mut d = CatalyticSeries::zero(0, 'u');
    for k in 1..=order { d = pass_d(&extended(&d, k), &c); }

    let c1 = c.at_one();
    let d1 = d.at_one();
    let mut prev = None;
    let mut slopes = Vec::new();
    for n in 2..=order {
        let m_n = BigRational::from_integer(map_count(n as u64));
        let mean = c1.coeff(n) / &m_n;
        let second = d1.coeff(n) / &m_n;
        let var = to_f64(&(&second + &mean - &mean * &mean));
        if let Some(p) = prev { slopes.push((n as f64, var - p)); }
        prev = Some(var);
    }
    for n in [4usize, 7, 10, 13, 16] {
        let m_n = BigRational::from_integer(map_count(n as u64));
        let mean = to_f64(&(c1.coeff(n) / &m_n));
        let second = to_f64(&(d1.coeff(n) / &m_n));
        let var = second + mean - mean * mean;
        println!("n={n}: mean={mean:.5} second_fact={second:.5} var={var:.5}");
    }
    for (n, s) in slopes.iter().rev().take(4).rev() { println!("exact slope at n={n}: {s:.8}"); }
    let mut cur = slopes[slopes.len()-20..].to_vec();
    for lvl in 1..=3 {
        cur = cur.windows(2).map(|w| {
            let (n0, a0) = w[0]; let (n1, a1) = w[1];
            let p = lvl as f64;
            (n1, (n1.powf(p) * a1 - n0.powf(p) * a0) / (n1.powf(p) - n0.powf(p)))
        }).collect();
        println!("richardson-{lvl} last: {:.8}", cur.last().unwrap().1);
    }
    println!("5/32 = {}", 5.0 / 32.0);
}
