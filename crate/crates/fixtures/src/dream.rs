//! Causation chains for 15 intersection crashes.

const HSR: &str = "habitually-stretching-rules";
const MOS: &str = "misjudgement-of-situation";
const MTG: &str = "misjudgement-of-time-gaps";
const EXP: &str = "expectancy-of-certain-behaviours";
const TOV: &str = "temporary-obstruction-of-view";
const LO: &str = "late-observation";
const MO: &str = "missed-observation";
const ISK: &str = "insufficient-skills-knowledge";
const POV: &str = "permanent-obstruction-of-view";
const IG: &str = "insufficient-guidance";
const IRG: &str = "inadequate-road-geometry";
const TEA: &str = "timing/too-early-action";
const NA: &str = "timing/no-action";

pub const CRASHES: usize = 15;
pub const NIGHT: [usize; 10] = [1, 2, 3, 6, 7, 8, 10, 11, 14, 15];

fn chains() -> Vec<Vec<(&'static str, &'static str)>> {
    let lo_mos = vec![(HSR, MOS), (TOV, LO), (LO, MOS), (MOS, TEA)];
    vec![
        vec![(HSR, MOS), (EXP, MOS), (MOS, TEA)],
        vec![(HSR, MOS), (MOS, TEA)],
        lo_mos.clone(),
        lo_mos,
        vec![(HSR, MOS), (EXP, MOS), (MOS, TEA)],
        vec![(HSR, MTG), (MTG, "speed")],
        vec![(HSR, MTG), (TOV, LO), (LO, MTG), (MTG, "speed")],
        vec![(HSR, MOS), (TOV, MO), (MO, MOS), (MOS, NA)],
        vec![(HSR, MTG), (EXP, MTG), (MTG, "speed")],
        vec![(EXP, MOS), (TOV, LO), (LO, MTG), (MTG, TEA), (MOS, TEA)],
        vec![(TOV, MO), (MO, MOS), (MOS, NA)],
        vec![(EXP, MTG), (TOV, LO), (LO, MTG), (MTG, "distance")],
        vec![(TOV, LO), (LO, MTG), (MTG, NA)],
        vec![(ISK, MO), (MO, MOS), (MOS, "direction")],
        vec![(POV, MO), (MO, MOS), (IG, MOS), (IRG, MOS), (MOS, NA)],
    ]
}

const SCENARIOS: [u8; CRASHES] = [27, 27, 28, 28, 27, 27, 29, 28, 27, 30, 28, 27, 28, 30, 28];

pub fn chain_text() -> String {
    let mut out = String::from("# Causation chains for intersection crashes.\n");
    for (k, links) in chains().into_iter().enumerate() {
        let n = k + 1;
        let violation = match n {
            1..=5 => "stop-sign",
            6..=9 => "red-light",
            _ => "none",
        };
        let lighting = if NIGHT.contains(&n) { "night" } else { "day" };
        out.push_str(&format!("\ncrash INT-{n:02}\n"));
        out.push_str(&format!(
            "meta lighting={lighting} violation={violation} scenario={}",
            SCENARIOS[k]
        ));
        if links.iter().any(|(a, _)| *a == TOV) {
            out.push_str(" obstruction=parked-vehicles");
        }
        out.push('\n');
        for (a, b) in links {
            out.push_str(&format!("{a} -> {b}\n"));
        }
        out.push_str("end\n");
    }
    out
}
