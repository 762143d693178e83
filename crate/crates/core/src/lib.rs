//! Standpoint-SROIQ knowledge bases: parsing, normalisation, translation to
//! plain SROIQ, serialisation and a bounded model finder.

pub mod frontend;
pub mod model;
pub mod normalizer;
pub mod oracle;
pub mod par;
pub mod random;
pub mod serializer;
pub mod translator;
