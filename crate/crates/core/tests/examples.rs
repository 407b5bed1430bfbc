//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));
        }

        #[test]
        fn $name() {
            $name::run().expect("example runs");
        }
    };
}

example!(translate_pdl);
example!(translate_fo3);
example!(evaluate);
example!(interval_preserving);
example!(complement);
example!(exhaustive_check);
example!(fuzz);
example!(suites);
