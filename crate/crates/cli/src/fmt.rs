/// `x` rounded to nine significant digits, trailing zeros dropped.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    let magnitude = rounded.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig9;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(0.75), "0.75");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(3.2110721925561903), "3.21107219");
        assert_eq!(sig9(4.281429590074921), "4.28142959");
        assert_eq!(sig9(1.0975), "1.0975");
        assert_eq!(sig9(9.9999999996), "10");
        assert_eq!(sig9(-0.00012345678912), "-0.000123456789");
        assert_eq!(sig9(123456789012.0), "123456789000");
        assert_eq!(sig9(0.0), "0");
    }
}
