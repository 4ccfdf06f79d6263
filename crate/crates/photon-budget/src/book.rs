//! Runs every code snippet in the guide (`book/src/*.md`) as a doctest, so
//! `cargo test --doc` keeps the book in sync with the API.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        mod $name {}
    };
}

chapter!(introduction, "../../../book/src/introduction.md");
chapter!(capacity, "../../../book/src/capacity.md");
chapter!(staircase, "../../../book/src/staircase.md");
chapter!(discrimination, "../../../book/src/discrimination.md");
chapter!(spectrum, "../../../book/src/spectrum.md");
chapter!(infospec, "../../../book/src/infospec.md");
chapter!(ppm, "../../../book/src/ppm.md");
