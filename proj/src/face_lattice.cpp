namespace corner {
}  // namespace corner
