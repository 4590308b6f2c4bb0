//! Scalar math shim: inherent `f64` methods under `std`, `libm` otherwise.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("optiproj-core requires either the `std` or the `libm` feature");

macro_rules! forward {
    ($(fn $name:ident / $libm_name:ident($($arg:ident: $ty:ty),+) -> f64;)+) => {
        $(
            #[inline(always)]
            pub(crate) fn $name($($arg: $ty),+) -> f64 {
                #[cfg(feature = "std")]
                {
                    f64::$name($($arg),+)
                }
                #[cfg(all(not(feature = "std"), feature = "libm"))]
                {
                    libm::$libm_name($($arg),+)
                }
            }
        )+
    };
}

forward! {
    fn sqrt / sqrt(x: f64) -> f64;
    fn exp / exp(x: f64) -> f64;
    fn ln / log(x: f64) -> f64;
    fn sin / sin(x: f64) -> f64;
    fn cos / cos(x: f64) -> f64;
    fn powf / pow(x: f64, y: f64) -> f64;
}

#[inline(always)]
pub(crate) fn abs(x: f64) -> f64 {
    f64::from_bits(x.to_bits() & !(1u64 << 63))
}
