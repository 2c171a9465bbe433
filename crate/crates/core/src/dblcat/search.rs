//! A small backtracking engine over dense variables.

use crate::budget::Budget;
use crate::error::Result;

/// Enumerates every assignment of `n` variables, in lexicographic order of
/// candidate positions.
///
/// `candidates(i, prefix)` lists the values of variable `i` given the values
/// of variables `0..i`, and `accept(i, prefix)` checks the constraints whose
/// last variable is `i` (with `prefix` holding `0..=i`). Every candidate
/// tried costs one unit of budget.
pub(crate) fn backtrack(
    n: usize,
    mut candidates: impl FnMut(usize, &[usize]) -> Vec<usize>,
    mut accept: impl FnMut(usize, &[usize]) -> bool,
    budget: &Budget,
    mut emit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    if n == 0 {
        emit(&[]);
        return Ok(());
    }
    let mut assign: Vec<usize> = Vec::with_capacity(n);
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(candidates(0, &assign), 0)];
    while let Some((cands, pos)) = stack.last_mut() {
        if *pos >= cands.len() {
            stack.pop();
            assign.pop();
            continue;
        }
        let v = cands[*pos];
        *pos += 1;
        budget.tick()?;
        let i = stack.len() - 1;
        assign.push(v);
        if !accept(i, &assign) {
            assign.pop();
            continue;
        }
        if i + 1 == n {
            if !emit(&assign) {
                return Ok(());
            }
            assign.pop();
        } else {
            let next = candidates(i + 1, &assign);
            stack.push((next, 0));
        }
    }
    Ok(())
}
