//! Driving the command dispatcher from code: a single report and a batch.

use pdt::cli::{batch_value, run_value, Options};
use serde_json::json;

fn main() {
    let opts = Options::default();
    let report = run_value("signature", &json!({"dim": 2, "gram": [["-2", "0"], ["0", "-2"]]}), &opts);
    print!("{}", report.render_json());

    let manifest = json!({"entries": [
        {"command": "kulikov", "input": {"components": ["K3"], "dual_complex": "Point", "double_curves": "None"}},
        {"command": "k3-type", "input": ["Cusp", "A2"]},
        {"command": "tube-integral", "input": {"epsilon": 0.5, "points": 64}},
    ]});
    let text = Options { text: true, ..Options::default() };
    print!("{}", batch_value(&manifest, std::path::Path::new("."), &text).render_text());
}
