//! Reader for the polynomial fixtures in `tests/data`.

/// Dense coefficients, constant term first, of `c*x^e + ...`.
pub fn parse_poly(text: &str, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for term in text.split('+').map(str::trim) {
        let (coeff, power) = match term.split_once('x') {
            None => (term, 0),
            Some((c, rest)) => {
                let c = c.trim_end_matches('*');
                let e = rest
                    .strip_prefix('^')
                    .map_or(1, |e| e.parse().expect("exponent"));
                (if c.is_empty() { "1" } else { c }, e)
            }
        };
        out[power] += coeff.parse::<u64>().expect("coefficient");
    }
    out
}

/// `(label, coefficients)` for every entry of a fixture over length `n`.
pub fn load(text: &str, n: usize) -> Vec<(String, Vec<u64>)> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let (head, poly) = line.split_once(':').expect("label and polynomial");
            let mut words = head.split_whitespace();
            let label = words.next().expect("label").to_string();
            assert_eq!(words.next(), Some("block"));
            let block: usize = words
                .next()
                .and_then(|b| b.parse().ok())
                .expect("block size");
            let tile = parse_poly(poly, block);
            (label, (0..n).map(|i| tile[i % block]).collect())
        })
        .collect()
}
