//! Reads an instance in either OR-Library encoding, solves it, and checks the
//! solution the way `wfc-sc verify` does.

use wfc_setcover::baselines::greedy;
use wfc_setcover::orlib::{
    detect_format, format_solution, parse_orlib, parse_solution, verify_solution, write_orlib, OrlibFormat,
};
use wfc_setcover::worked_example;

fn main() -> wfc_setcover::Result<()> {
    let original = worked_example();
    for format in [OrlibFormat::RowMajor, OrlibFormat::ColumnMajor] {
        let text = write_orlib(&original, format);
        println!("{format}:\n{text}");
        match detect_format(text.as_bytes()) {
            Ok(found) => println!("detected: {found}"),
            Err(e) => println!("detection: {e}"),
        }
        let instance = parse_orlib(text.as_bytes(), Some(format), "tiny")?;
        let cover = greedy(&instance);
        let line = format_solution(&instance, cover.selected());
        println!("greedy solution: {line}");
        let report = verify_solution(&instance, &parse_solution(&line, &instance)?);
        println!("{report}\n");
    }
    let instance = parse_orlib(write_orlib(&original, OrlibFormat::RowMajor).as_bytes(), None, "tiny")?;
    println!("{}", verify_solution(&instance, &parse_solution("1 9", &instance)?));
    Ok(())
}
