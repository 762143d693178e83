//! Reference enumeration: walks every assignment in canonical order and
//! evaluates the semantics directly. Exponential; for cross-checking the
//! solver-based search on tiny signatures.

use crate::model::{signature_of, PlainKb, Signature, StandpointKb};
use crate::normalizer::resolve_refs;

use super::ground::Layout;
use super::interp::{kb_holds, plain_kb_holds, PlainInterpretation, StandpointStructure};
use super::OracleError;

/// Largest number of assignment bits the enumerator accepts.
pub const MAX_BITS: usize = 22;

fn assignments(layout: &Layout) -> Result<impl Iterator<Item = Vec<bool>> + '_, OracleError> {
    let bits = layout.bits();
    if bits > MAX_BITS {
        return Err(OracleError::SearchSpaceTooLarge { bits, limit: MAX_BITS });
    }
    Ok((0u64..1 << bits)
        .map(move |code| (0..bits).map(|v| code >> (bits - 1 - v) & 1 == 1).collect::<Vec<bool>>())
        .filter(|b| layout.ladders_valid(b)))
}

/// First model of `kb` with exactly `n` elements.
pub fn plain_model(kb: &PlainKb, n: usize) -> Result<Option<PlainInterpretation>, OracleError> {
    let layout = Layout::new(&Signature::of_plain(kb), n, 1, false);
    for b in assignments(&layout)? {
        let i = layout.decode_layer(&b, 0);
        if plain_kb_holds(&i, kb)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// First structure for `kb` with exactly `n` elements and `m` precisifications.
pub fn standpoint_model(kb: &StandpointKb, n: usize, m: usize) -> Result<Option<StandpointStructure>, OracleError> {
    let kb = resolve_refs(kb)?;
    let layout = Layout::new(&signature_of(&kb), n, m, true);
    for b in assignments(&layout)? {
        let d = layout.decode_structure(&b);
        if kb_holds(&d, &kb)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
