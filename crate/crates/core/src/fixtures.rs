//! Small theories and translations bundled with the crate.

use crate::parse::parse_theory;
use crate::syntax::Theory;
use crate::translation::{parse_translation, TheoryTranslation};

pub const TRIVIAL: &str = include_str!("../fixtures/trivial.theory");
pub const MONOID: &str = include_str!("../fixtures/monoid.theory");
pub const Z2: &str = include_str!("../fixtures/z2.theory");
pub const WITNESS: &str = include_str!("../fixtures/witness.theory");
pub const UNREACHABLE: &str = include_str!("../fixtures/unreachable.theory");
pub const ZF_STUB: &str = include_str!("../fixtures/zf_stub.theory");

pub const MONOID_TO_Z2: &str = include_str!("../fixtures/monoid_to_z2.translation");
pub const MONOID_IDENTITY_TRANSLATION: &str = include_str!("../fixtures/monoid_identity.translation");
pub const Z2_IDENTITY_TRANSLATION: &str = include_str!("../fixtures/z2_identity.translation");
pub const Z2_TO_MONOID: &str = include_str!("../fixtures/z2_to_monoid.translation");

/// Every bundled theory document, by file stem.
pub const THEORIES: [(&str, &str); 6] = [
    ("trivial", TRIVIAL),
    ("monoid", MONOID),
    ("z2", Z2),
    ("witness", WITNESS),
    ("unreachable", UNREACHABLE),
    ("zf_stub", ZF_STUB),
];

fn load(text: &str) -> Theory {
    parse_theory(text).expect("bundled theory parses")
}

pub fn trivial() -> Theory {
    load(TRIVIAL)
}

pub fn monoid() -> Theory {
    load(MONOID)
}

pub fn z2() -> Theory {
    load(Z2)
}

pub fn witness() -> Theory {
    load(WITNESS)
}

pub fn unreachable() -> Theory {
    load(UNREACHABLE)
}

pub fn zf_stub() -> Theory {
    load(ZF_STUB)
}

pub fn monoid_to_z2() -> TheoryTranslation {
    parse_translation(MONOID_TO_Z2, &monoid(), &z2()).expect("bundled translation parses")
}

pub fn z2_to_monoid() -> TheoryTranslation {
    parse_translation(Z2_TO_MONOID, &z2(), &monoid()).expect("bundled translation parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_documents_parse() {
        for (_, text) in THEORIES {
            load(text);
        }
        monoid_to_z2();
        z2_to_monoid();
        let z = z2();
        parse_translation(Z2_IDENTITY_TRANSLATION, &z, &z).unwrap();
    }
}
