//! Steps through WFC on the five-element instance, printing conflicts and
//! entropy after each operation.

use wfc_setcover::wfc::{WfcParams, WfcState};
use wfc_setcover::{worked_example, TieBreak};

fn show(label: &str, state: &WfcState) {
    println!("{label}");
    for s in 0..state.instance().num_sets() {
        if let (Some(c), Some(e)) = (state.conflicts(s), state.entropy(s)) {
            let elems: Vec<usize> = state.instance().elements_of(s).iter().map(|x| x + 1).collect();
            println!("  S{} = {elems:?}: conflicts = {c}, entropy = {e}", s + 1);
        }
    }
    let ans: Vec<String> = state.answer().iter().map(|s| format!("S{}", s + 1)).collect();
    println!("  answer so far: {{{}}}", ans.join(", "));
}

fn main() -> wfc_setcover::Result<()> {
    let instance = worked_example();
    let params = WfcParams::plain(0).with_tie_break(TieBreak::LowestIndex);

    let state = WfcState::fresh(&instance, &params)?;
    show("initial state", &state);

    let mut state = WfcState::init(&instance, &params)?;
    show("after collapsing sole containers", &state);

    while state.active_set_count() > 0 {
        let s = state.step()?;
        state.check_invariants()?;
        show(&format!("after removing S{}", s + 1), &state);
    }
    let cover = state.into_cover();
    println!(
        "cover of size {}: {:?}",
        cover.size(),
        cover.sorted().iter().map(|s| s + 1).collect::<Vec<_>>()
    );
    Ok(())
}
