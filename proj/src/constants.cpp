#include "pi01/elementary.hpp"
#include "pi01/errors.hpp"

namespace pi01 {

namespace {

// floor(c * 2^kStoredBits) in hexadecimal, with an FNV-1a checksum of the
// digit string. Recomputed from independent series in tests/test_constants.
constexpr std::int64_t kStoredBits = 4224;
constexpr int kCapBits = 4160;

constexpr const char* kGammaHex =
    "93c467e37db0c7a4d1be3f810152cb56a1cecc3af65cc0190c03df34709affbd8e4b59fa03a9f0eed0649ccb621057d11056ae9132135a08e43b4673d74bafea58deb878cc86d733dbe7bf38154b36cf8a96d1567899aaae0c09d4c8b6b7b86fd2a1ea1de62ff8643ec7c271827977225e6ac2f0bd61c746961542a3ce3bea5db54fe70e63e6d09f8fc28658e80567a47cfde60ee741e5d85a7bd46931ced8220365594964b839896fcaabccc9b31959c083f22ad3ee591c32fab2c7448f2a057db2db49ee52e0182741e53865f004cc8e704b7c5c40bf304c4d8c4f13edf6047c555302d2238d8ce11df2424f1b66c2c5d238d0744db679af2890487031f9c0aea1c4bb6fe9554ee528fdf1b05e5b256223b2f09215f3719f9c7ccc69ddf172d0d6234217fcc0037f18b93ef5389130b7a661e5c26e54214068bbcafea32a67818bd3075ad1f5c7e9cc3d1737fb28171baf84dbb6612b7881c1a48e439cd03a92bf52225a2b38e6542e9f722bce15a381b5753ea842763381ccae83512b30511b32e5e8d80362149ad030aaba5f3a5798bb22aa7ec1b6d0f17903f4e1f3a06731072b10e04218380c3f5be7d44c6937b6e79cf67655f07230456f98340336e1166330fbef5f3cdbe29b7929c3bfbcf4298c94ecfa77dbb06ab26c11890ea9e63440b10921fb25361b34c7b9342a13e3fb6a91c35f67b95163a91f916aa7b253cc82ee520ec006866584424e7cdce3c3";
constexpr std::uint64_t kGammaChecksum = 0xa73e2f1b7086e17aULL;

constexpr const char* kPiHex =
    "3243f6a8885a308d313198a2e03707344a4093822299f31d0082efa98ec4e6c89452821e638d01377be5466cf34e90c6cc0ac29b7c97c50dd3f84d5b5b54709179216d5d98979fb1bd1310ba698dfb5ac2ffd72dbd01adfb7b8e1afed6a267e96ba7c9045f12c7f9924a19947b3916cf70801f2e2858efc16636920d871574e69a458fea3f4933d7e0d95748f728eb658718bcd5882154aee7b54a41dc25a59b59c30d5392af26013c5d1b023286085f0ca417918b8db38ef8e79dcb0603a180e6c9e0e8bb01e8a3ed71577c1bd314b2778af2fda55605c60e65525f3aa55ab945748986263e8144055ca396a2aab10b6b4cc5c341141e8cea15486af7c72e993b3ee1411636fbc2a2ba9c55d741831f6ce5c3e169b87931eafd6ba336c24cf5c7a325381289586773b8f48986b4bb9afc4bfe81b6628219361d809ccfb21a991487cac605dec8032ef845d5de98575b1dc262302eb651b8823893e81d396acc50f6d6ff383f442392e0b4482a484200469c8f04a9e1f9b5e21c66842f6e96c9a670c9c61abd388f06a51a0d2d8542f68960fa728ab5133a36eef0b6c137a3be4ba3bf0507efb2a98a1f1651d39af017666ca593e82430e888cee8619456f9fb47d84a5c33b8b5ebee06f75d885c12073401a449f56c16aa64ed3aa62363f77061bfedf72429b023d37d0d724d00a1248db0fead349f1c09b075372c980991b7b25d479d8f6e8def7e3fe501ab6794c3b";
constexpr std::uint64_t kPiChecksum = 0x7b69abbaaba19c1bULL;

BigInt load(const char* hex, std::uint64_t checksum, const char* name) {
  if (fnv1a64(std::string(hex)) != checksum)
    throw FormatError(std::string("stored constant failed checksum: ") + name);
  BigInt v;
  v.set_str(hex, 16);
  return v;
}

const BigInt& gamma_digits() {
  static const BigInt v = load(kGammaHex, kGammaChecksum, "gamma");
  return v;
}

const BigInt& pi_digits() {
  static const BigInt v = load(kPiHex, kPiChecksum, "pi");
  return v;
}

Interval stored(const BigInt& digits, Precision p, const char* name) {
  if (p.bits() > kCapBits)
    throw CapacityError(std::string(name) + " requested at " + std::to_string(p.bits()) +
                        " bits; stored precision cap is " + std::to_string(kCapBits));
  Interval raw(Dyadic(digits, -kStoredBits), Dyadic(digits + 1, -kStoredBits));
  return round_to(raw, p);
}

}  // namespace

int stored_constant_cap_bits() { return kCapBits; }

Interval gamma_enclosure(Precision p) { return stored(gamma_digits(), p, "gamma"); }

Interval pi_enclosure(Precision p) { return stored(pi_digits(), p, "pi"); }

}  // namespace pi01
