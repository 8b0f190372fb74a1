//! Occupation-number basis. Orbital 2α holds (α, ↑), orbital 2α+1 holds (α, ↓).

use std::collections::BTreeMap;

pub type State = u32;

pub fn up_bit(level: usize) -> u32 {
    1 << (2 * level)
}

pub fn down_bit(level: usize) -> u32 {
    1 << (2 * level + 1)
}

pub fn particle_number(s: State) -> u32 {
    s.count_ones()
}

/// 2S_z = n↑ − n↓.
pub fn two_sz(s: State) -> i32 {
    (s & 0x5555_5555).count_ones() as i32 - (s & 0xAAAA_AAAA).count_ones() as i32
}

/// (−1)^{number of occupied orbitals below `orbital`}.
fn parity_below(s: State, orbital: u32) -> f64 {
    let mask = (1u32 << orbital) - 1;
    if (s & mask).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// a†_{α↑} a_{α↓} |s⟩ as (sign, new state), or `None` when it vanishes.
pub fn spin_raise(s: State, level: usize) -> Option<(f64, State)> {
    let (up, down) = (up_bit(level), down_bit(level));
    if s & down == 0 || s & up != 0 {
        return None;
    }
    let sign_annihilate = parity_below(s, 2 * level as u32 + 1);
    let mid = s & !down;
    let sign_create = parity_below(mid, 2 * level as u32);
    Some((sign_annihilate * sign_create, mid | up))
}

/// a†_{α↓} a_{α↑} |s⟩.
pub fn spin_lower(s: State, level: usize) -> Option<(f64, State)> {
    let (up, down) = (up_bit(level), down_bit(level));
    if s & up == 0 || s & down != 0 {
        return None;
    }
    let sign_annihilate = parity_below(s, 2 * level as u32);
    let mid = s & !up;
    let sign_create = parity_below(mid, 2 * level as u32 + 1);
    Some((sign_annihilate * sign_create, mid | down))
}

/// Fock states grouped by (N, 2S_z), each group in ascending bit order.
pub fn sectors(levels: usize) -> BTreeMap<(u32, i32), Vec<State>> {
    let mut map: BTreeMap<(u32, i32), Vec<State>> = BTreeMap::new();
    for s in 0..(1u32 << (2 * levels)) {
        map.entry((particle_number(s), two_sz(s))).or_default().push(s);
    }
    map
}
