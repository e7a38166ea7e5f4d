//! Deterministic partition enumeration: graded by weight, then descending
//! lexicographic within each weight, every partition padded to a fixed length.

/// Non-increasing non-negative vectors of length `n` with weight ≤ `max_weight`
/// and at most `max_parts` nonzero entries.
fn graded(n: usize, max_weight: usize, max_parts: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for weight in 0..=max_weight {
        emit(weight, max_parts, weight as i64, &mut Vec::new(), n, &mut out);
    }
    out
}

fn emit(
    remaining: usize,
    slots: usize,
    max_part: i64,
    prefix: &mut Vec<i64>,
    n: usize,
    out: &mut Vec<Vec<i64>>,
) {
    if remaining == 0 {
        let mut padded = prefix.clone();
        padded.resize(n, 0);
        out.push(padded);
        return;
    }
    if slots == 0 {
        return;
    }
    let ceil_div = (remaining as i64 + slots as i64 - 1) / slots as i64;
    let hi = max_part.min(remaining as i64);
    // Largest first part first gives descending lexicographic order.
    let mut part = hi;
    while part >= ceil_div {
        prefix.push(part);
        emit(remaining - part as usize, slots - 1, part, prefix, n, out);
        prefix.pop();
        part -= 1;
    }
}

/// Partitions of length `n` with the last entry forced to zero (at most n−1
/// nonzero parts), weight ≤ `max_weight`.
pub fn partitions_with_last_zero(n: usize, max_weight: usize) -> Vec<Vec<i64>> {
    assert!(n >= 1);
    graded(n, max_weight, n - 1)
}

/// All partitions padded to length `n`, weight ≤ `max_weight`.
pub fn partitions_padded(n: usize, max_weight: usize) -> Vec<Vec<i64>> {
    graded(n, max_weight, n)
}
