/// Appends primes to `base` until `taken` rejects the candidate.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut name = format!("{base}'");
    while taken(&name) {
        name.push('\'');
    }
    name
}
