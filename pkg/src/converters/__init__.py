# JSON codecs for control artifacts
