//! Reading and writing the JSON formats used by the command-line tool.

use serde_json::json;
use symdyn::json::{self, Kind};

fn main() -> symdyn::Result<()> {
    let sft = json::parse_sft(&json!({"alphabet": ["0", "1"], "forbidden": ["11"]}), "$")?;
    println!("parsed SFT over {} symbols", sft.alphabet().len());
    println!("edge shift: {}", json::graph_to_json(&sft.edge_shift().graph, None));

    let pipeline = json!({"moves": [{"op": "expand", "symbol": "1"}, {"op": "word_contract", "word": "01"}]});
    let doc = json::parse_pipeline(&pipeline, "$")?;
    let p = doc.build(&[])?;
    println!("pipeline: {}", json::pipeline_to_json(&p));

    for text in [r#"[[1,1],[1,0]]"#, r#"{"kind":"finite","elements":[0,2]}"#, r#"{"sign":-1,"divisors":[1]}"#] {
        let v: serde_json::Value = serde_json::from_str(text).expect("valid JSON");
        println!("{text} is a {}", Kind::detect(&v).map(Kind::name).unwrap_or("?"));
    }
    match json::validate(&json!([[1, 2], [-3, 0]])) {
        Ok(kind) => println!("unexpectedly valid: {}", kind.name()),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
