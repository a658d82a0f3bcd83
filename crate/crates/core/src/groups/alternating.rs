//! Split classes of the alternating group.
//!
//! An even cycle type with distinct odd parts is a single `S_n` class that
//! breaks into two `A_n` classes. We call the half containing
//! [`Permutation::canonical_representative`] `Plus` and the other `Minus`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::permutation::{canonical_conjugator, conjugator_sign, Permutation};
use crate::error::{Error, Result};
use crate::partitions::{Partition, PowerAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitTag {
    Plus,
    Minus,
    Nonsplit,
}

impl SplitTag {
    pub fn flip(self) -> SplitTag {
        match self {
            SplitTag::Plus => SplitTag::Minus,
            SplitTag::Minus => SplitTag::Plus,
            SplitTag::Nonsplit => SplitTag::Nonsplit,
        }
    }

    pub fn apply(self, action: PowerAction) -> SplitTag {
        match action {
            PowerAction::Identity => self,
            PowerAction::Exchange => self.flip(),
        }
    }
}

/// Whether an even cycle type splits in `A_n`: all parts odd and distinct.
pub fn an_split_test(p: &Partition) -> Result<bool> {
    if !p.is_even() {
        return Err(Error::OddParity(p.clone()));
    }
    Ok(p.has_distinct_odd_parts())
}

/// Like [`an_split_test`] but false for `n < 2`, where `A_n = S_n` and
/// nothing can split.
pub(crate) fn splits_in_an(p: &Partition) -> bool {
    p.n() >= 2 && p.is_even() && p.has_distinct_odd_parts()
}

/// Effect of `x -> x^exp` on the two halves of a split class.
///
/// The canonical representative `x` and `x^exp` lie in the same `A_n` class
/// iff some even permutation conjugates one into the other. The centralizer
/// of `x` lies inside `A_n`, so every conjugator has the same sign and the
/// canonical one decides.
pub fn an_power_action(p: &Partition, exp: i64) -> Result<PowerAction> {
    if !an_split_test(p)? {
        return Err(Error::NotSplit(p.clone()));
    }
    let order = p.order();
    let e = exp.rem_euclid(order as i64) as u64;
    if e.gcd(&order) != 1 {
        return Err(Error::NotCoprime { exp, order });
    }
    let x = Permutation::canonical_representative(p);
    let y = x.pow(e);
    let sign = conjugator_sign(&x, &y)?.expect("coprime powers keep the cycle type");
    Ok(PowerAction::from_sign(sign))
}

/// Which half of a split class `x` lies in.
pub fn split_side(x: &Permutation) -> SplitTag {
    let p = x.cycle_type();
    if !splits_in_an(&p) {
        return SplitTag::Nonsplit;
    }
    let rep = Permutation::canonical_representative(&p);
    let tau = canonical_conjugator(&rep, x)
        .expect("same degree")
        .expect("same cycle type");
    if tau.sign() > 0 {
        SplitTag::Plus
    } else {
        SplitTag::Minus
    }
}

/// A member of the given half. `Minus` conjugates the canonical
/// representative by the transposition `(1 2)`.
pub fn split_representative(p: &Partition, tag: SplitTag) -> Permutation {
    let rep = Permutation::canonical_representative(p);
    match tag {
        SplitTag::Minus => {
            let t = Permutation::from_cycles(rep.degree(), &[vec![0, 1]]).expect("n >= 2");
            rep.conjugate_by(&t)
        }
        _ => rep,
    }
}
