//! Drive the command-line front end in-process: a small value table and the
//! verification suites.

fn main() {
    let table = [
        "heunsym",
        "table",
        "--phi",
        "0.7",
        "--chi",
        "0.3,0.6,0.9,1.2",
        "--lambda",
        "2-0.5i",
        "--grid",
        "0.2:0.6:3,0:3.14159:2",
    ];
    let code = heunsym::cli::run(table);
    println!("table exit code {code}");
    let verify = [
        "heunsym",
        "verify",
        "--phi",
        "0.7",
        "--chi",
        "0.3,0.6,0.9,1.2",
        "--lambda",
        "2-0.5i",
    ];
    let code = heunsym::cli::run(verify);
    println!("verify exit code {code}");
}
