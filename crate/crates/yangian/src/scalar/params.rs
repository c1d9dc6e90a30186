//! Fixed registry of formal parameters.
//!
//! The registry is immutable: every parameter a computation may ever touch is
//! declared here, so monomial exponent vectors have a fixed width and the
//! canonical monomial order is stable across the whole session.

/// Number of registered parameters.
pub const NPARAMS: usize = 10;

/// Names, indexed by `ParamId`. Order fixes the lexicographic tie-break of
/// the graded monomial order.
pub const PARAM_NAMES: [&str; NPARAMS] = [
    "hbar", "p", "t", "u", "v", "w", "lambda", "lambda1", "lambda2", "lambda3",
];

/// Handle to one registered formal parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamId(pub(crate) usize);

impl ParamId {
    pub const HBAR: ParamId = ParamId(0);
    pub const P: ParamId = ParamId(1);
    pub const T: ParamId = ParamId(2);
    pub const U: ParamId = ParamId(3);
    pub const V: ParamId = ParamId(4);
    pub const W: ParamId = ParamId(5);
    pub const LAMBDA: ParamId = ParamId(6);
    pub const LAMBDA1: ParamId = ParamId(7);
    pub const LAMBDA2: ParamId = ParamId(8);
    pub const LAMBDA3: ParamId = ParamId(9);

    /// Look a parameter up by name.
    pub fn by_name(name: &str) -> Option<ParamId> {
        PARAM_NAMES.iter().position(|n| *n == name).map(ParamId)
    }

    pub fn name(self) -> &'static str {
        PARAM_NAMES[self.0]
    }

    pub(crate) fn index(self) -> usize {
        self.0
    }

    /// All registered parameters.
    pub fn all() -> impl Iterator<Item = ParamId> {
        (0..NPARAMS).map(ParamId)
    }
}

impl std::fmt::Display for ParamId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_roundtrip() {
        for id in ParamId::all() {
            assert_eq!(ParamId::by_name(id.name()), Some(id));
        }
        assert_eq!(ParamId::by_name("q"), None);
    }
}
